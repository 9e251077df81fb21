use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::boolalg::Term;
use crate::solver::{Mode, SolverConfig, Status};

fn example1() -> CnfSet {
    CnfSet::from_dimacs_rows(
        &[
            &[1, -3, 6],
            &[2, -3, 5, 6, 7],
            &[1, 2, -3, -5, -6, 8],
            &[-2, 4, -7, -8],
            &[-4, 8],
        ],
        8,
    )
}

fn example2() -> CnfSet {
    CnfSet::from_dimacs_rows(
        &[
            &[1, -2, 5, -8],
            &[-1, 3, -4, 7],
            &[-3, 4, 8],
            &[2, -5, 6, -7],
            &[5, -6, -7],
        ],
        8,
    )
}

fn rows(rs: &[&[i64]]) -> BTreeSet<Clause> {
    rs.iter().map(|r| Clause::from_dimacs(r)).collect()
}

fn v(i: u32) -> VarId {
    VarId(i - 1)
}

fn cfg(mode: Mode, n0: usize, split_depth: usize, workers: usize) -> SolverConfig {
    SolverConfig {
        n0,
        split_depth,
        workers,
        mode,
        check_solutions: true,
    }
}

fn random_cnf(rng: &mut StdRng, n: usize, m: usize, width: usize) -> CnfSet {
    let clauses = (0..m)
        .filter_map(|_| {
            let w = rng.gen_range(1..=width.min(n));
            Clause::new((0..w).map(|_| Lit::new(VarId(rng.gen_range(0..n as u32)), rng.gen())))
        })
        .collect();
    CnfSet::new(clauses, n)
}

/// Satisfying points by clause-wise evaluation over the whole cube.
fn oracle(c: &CnfSet) -> BTreeSet<Assignment> {
    let vs = c.vars();
    (0..1u64 << vs.len())
        .map(|i| Assignment::from_index(&vs, i))
        .filter(|a| c.clauses.iter().all(|cl| cl.lits().iter().any(|l| a.get(l.var).unwrap() == l.positive)))
        .collect()
}

#[test]
fn parse_single_clause() {
    let c = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap();
    assert_eq!(c.num_vars, 2);
    assert_eq!(c.clauses, vec![Clause::new([Lit::pos(VarId(0)), Lit::neg(VarId(1))]).unwrap()]);
}

#[test]
fn parse_example1() {
    let text = "c example\np cnf 8 5\n1 -3 6 0\n2 -3 5 6 7 0\n1 2 -3 -5 -6 8 0\n-2 4 -7 -8 0\n-4 8 0\n";
    let c = parse_dimacs(text).unwrap();
    assert_eq!(c, example1());
    assert_eq!(c.clauses[0], Clause::from_dimacs(&[1, -3, 6]));
}

#[test]
fn dimacs_warnings_and_errors() {
    let p = parse_dimacs_with("p cnf 2 3\n1 2 0\n1 -1 0\n2 2 -1 0\n", false).unwrap();
    assert_eq!(p.cnf.clauses.len(), 2);
    assert_eq!(p.cnf.clauses[1], Clause::from_dimacs(&[-1, 2]));
    assert_eq!(p.warnings.len(), 1);

    let p = parse_dimacs_with("p cnf 2 2\n1 2 0\n", false).unwrap();
    assert_eq!(p.warnings.len(), 1);
    assert!(matches!(parse_dimacs_with("p cnf 2 2\n1 2 0\n", true), Err(Error::HeaderMismatch(_))));
    assert!(matches!(parse_dimacs_with("p cnf 1 1\n1 2 0\n", true), Err(Error::HeaderMismatch(_))));
    assert_eq!(parse_dimacs("p cnf 1 1\n1 2 0\n").unwrap().num_vars, 2);

    assert!(matches!(parse_dimacs("1 2 0\n"), Err(Error::Parse { line: 1, .. })));
    assert!(matches!(parse_dimacs("p cnf 2 1\n\n1 x 0\n"), Err(Error::Parse { line: 3, .. })));
    assert!(matches!(parse_dimacs("c only\n"), Err(Error::Parse { .. })));

    let c = parse_dimacs("p cnf 3 2\n1 -2\n 3 0 -1 0\n%\n0\n").unwrap();
    assert_eq!(c.clauses, vec![Clause::from_dimacs(&[1, -2, 3]), Clause::from_dimacs(&[-1])]);
}

#[test]
fn pure_literals_examples() {
    assert_eq!(find_pure_literals(&example1()), vec![Lit::pos(v(1)), Lit::neg(v(3))]);
    assert!(find_pure_literals(&example2()).is_empty());
    let c = CnfSet::from_dimacs_rows(&[&[1, 2], &[-1, 2]], 2);
    assert_eq!(find_pure_literals(&c), vec![Lit::pos(v(2))]);
}

#[test]
fn reduce_examples() {
    let p = PartialAssignment::from_pairs([(v(1), true), (v(3), false)]).unwrap();
    let r = assign_and_reduce(&example1(), &p).unwrap();
    assert_eq!(r.clause_set(), rows(&[&[-2, 4, -7, -8], &[-4, 8]]));

    let c = CnfSet::from_dimacs_rows(&[&[1]], 1);
    let p = PartialAssignment::from_pairs([(v(1), false)]).unwrap();
    assert_eq!(assign_and_reduce(&c, &p), Err(Conflict));
}

#[test]
fn pure_chain_examples() {
    let t = pure_literal_chain(&example1()).unwrap();
    let want = [
        Term::new([(v(1), Polarity::Negative)]).unwrap(),
        Term::new([(v(1), Polarity::Positive), (v(3), Polarity::Positive)]).unwrap(),
        Term::new([(v(1), Polarity::Positive), (v(3), Polarity::Negative)]).unwrap(),
    ];
    assert_eq!(t.terms().unwrap(), &want);

    let c = CnfSet::from_dimacs_rows(&[&[1]], 1);
    let t = pure_literal_chain(&c).unwrap();
    assert_eq!(t.terms().unwrap().len(), 2);

    assert_eq!(pure_literal_chain(&example2()).unwrap_err(), Error::NoPureLiterals);
}

#[test]
fn example1_decide() {
    let out = solve_sat(&example1(), &SolverConfig::default()).unwrap();
    assert_eq!(out.status, Status::Sat);
    let sol = &out.solutions[0];
    let want = PartialAssignment::from_pairs([(v(1), true), (v(2), false), (v(3), false), (v(4), false)]).unwrap();
    assert_eq!(sol.assignment, want);
    assert_eq!(sol.dont_care, vec![v(5), v(6), v(7), v(8)]);
    assert!(oracle(&example1()).contains(&sol.representative()));
}

#[test]
fn example2_decomposition() {
    let c = example2();
    let t = OnSet::term_chain(&[(v(1), Polarity::Negative), (v(2), Polarity::Negative)]).unwrap();
    let kids: Vec<_> = decompose(&c, &t).unwrap().into_iter().map(Result::unwrap).collect();
    assert_eq!(kids[0].clause_set(), rows(&[&[3, -4, 7], &[-3, 4, 8], &[2, -5, 6, -7], &[5, -6, -7]]));
    assert_eq!(kids[1].clause_set(), rows(&[&[5, -8], &[-3, 4, 8], &[5, -6, -7]]));
    assert_eq!(kids[2].clause_set(), rows(&[&[-3, 4, 8], &[-5, 6, -7], &[5, -6, -7]]));

    let (c1, first) = pure_literal_round(&kids[0]);
    assert_eq!(first, vec![Lit::pos(v(2)), Lit::pos(v(8))]);
    assert_eq!(c1.clause_set(), rows(&[&[3, -4, 7], &[5, -6, -7]]));
    let (c1, second) = pure_literal_round(&c1);
    assert_eq!(second, vec![Lit::pos(v(3)), Lit::pos(v(5))]);
    assert!(c1.clauses.is_empty());

    assert!(solve_sat(&c, &SolverConfig::default()).unwrap().is_sat());
}

#[test]
fn empty_clause_is_unsat() {
    let c = CnfSet::new(vec![Clause::new([]).unwrap()], 3);
    for n0 in [1, 4] {
        assert_eq!(solve_sat(&c, &cfg(Mode::Enumerate, n0, 1, 1)).unwrap().status, Status::Unsat);
    }
}

#[test]
fn to_system_agrees() {
    let c = example1();
    let s = c.to_system();
    let out = crate::solver::bool_solve(&s, &cfg(Mode::Enumerate, 3, 2, 1)).unwrap();
    let got: BTreeSet<_> = out.expanded().into_iter().collect();
    assert_eq!(got, oracle(&c));
}

#[test]
fn dpll_split() {
    let c = example2();
    let t = choose_split(&c, &cfg(Mode::Decide, 1, 1, 1)).unwrap();
    let terms = t.terms().unwrap();
    assert_eq!(terms.len(), 2);
    let x = terms[0].vars().next().unwrap();
    let kids = decompose(&c, &t).unwrap();
    let got: BTreeSet<_> = kids.into_iter().map(|k| k.map(|c| c.clause_set())).collect();
    let want: BTreeSet<_> = [false, true]
        .into_iter()
        .map(|b| assign_and_reduce(&c, &PartialAssignment::from_pairs([(x, b)]).unwrap()).map(|c| c.clause_set()))
        .collect();
    assert_eq!(got, want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimacs_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..20);
        let m = rng.gen_range(0..30);
        let c = random_cnf(&mut rng, n, m, 5);
        prop_assert_eq!(parse_dimacs(&emit_dimacs(&c)).unwrap(), c);
    }

    #[test]
    fn reduce_matches_filter(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_cnf(&mut rng, 6, 8, 3);
        let k = rng.gen_range(0..=6);
        let p = PartialAssignment::from_pairs((0..k).map(|i| (VarId(i), rng.gen()))).unwrap();
        let want: BTreeSet<_> = oracle(&c)
            .into_iter()
            .filter(|a| p.iter().all(|(v, b)| a.get(v).unwrap() == b))
            .collect();
        match assign_and_reduce(&c, &p) {
            Err(Conflict) => prop_assert!(want.is_empty()),
            Ok(r) => {
                let got: BTreeSet<_> = oracle(&r)
                    .into_iter()
                    .filter(|a| p.iter().all(|(v, b)| a.get(v).unwrap() == b))
                    .collect();
                prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn pure_round_preserves_sat(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_cnf(&mut rng, 7, 6, 3);
        let (r, lits) = pure_literal_round(&c);
        let sat = !oracle(&c).is_empty();
        prop_assert_eq!(!oracle(&r).is_empty(), sat);
        let p = lits_to_partial(&lits).unwrap();
        prop_assert_eq!(assign_and_reduce(&c, &p).unwrap(), r);
    }

    #[test]
    fn enumerate_matches_oracle(seed in any::<u64>(), n0 in 1usize..=4, depth in 1usize..=3, workers in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(0..=3 * n);
        let c = random_cnf(&mut rng, n, m, 3);
        let out = solve_sat(&c, &cfg(Mode::Enumerate, n0, depth, workers)).unwrap();
        let got = out.expanded();
        let set: BTreeSet<_> = got.iter().cloned().collect();
        prop_assert_eq!(got.len(), set.len());
        prop_assert_eq!(set, oracle(&c));
    }

    #[test]
    fn decide_matches_oracle(seed in any::<u64>(), n0 in 1usize..=4, workers in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=10);
        let c = random_cnf(&mut rng, n, 4 * n, 3);
        let truth = oracle(&c);
        let out = solve_sat(&c, &cfg(Mode::Decide, n0, 2, workers)).unwrap();
        prop_assert_eq!(out.is_sat(), !truth.is_empty());
        if let Some(s) = out.solutions.first() {
            prop_assert!(truth.contains(&s.representative()));
        }
    }
}
