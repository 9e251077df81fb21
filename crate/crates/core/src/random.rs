//! Seeded generators for random functions, used by property tests, the
//! `verify` command and benchmarks.

use rand::Rng;

use crate::boolalg::{BoolFunc, VarId};
use crate::cnf::{Clause, CnfSet, Lit};
use crate::solver::{BoolSystem, Equation};

/// A random expression over `vars` with the given nesting depth.
pub fn random_func<R: Rng + ?Sized>(rng: &mut R, vars: &[VarId], depth: u32) -> BoolFunc {
    if depth == 0 || vars.is_empty() || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => BoolFunc::constant(rng.gen()),
            _ if vars.is_empty() => BoolFunc::constant(rng.gen()),
            _ => {
                let v = BoolFunc::var(vars[rng.gen_range(0..vars.len())]);
                if rng.gen() {
                    v.not()
                } else {
                    v
                }
            }
        };
    }
    let a = random_func(rng, vars, depth - 1);
    let b = random_func(rng, vars, depth - 1);
    match rng.gen_range(0..7) {
        0 | 1 => a.and(&b),
        2 | 3 => a.or(&b),
        4 | 5 => a.xor(&b),
        _ => a.not(),
    }
}

pub fn vars(n: usize) -> Vec<VarId> {
    (0..n as u32).map(VarId).collect()
}

/// A random system of `neq` equations over `n` variables. Some equations are
/// literal units or literal equalities so that the trivial reductions fire.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, n: usize, neq: usize) -> BoolSystem {
    let vs = vars(n);
    let lit = |rng: &mut R| {
        let v = BoolFunc::var(vs[rng.gen_range(0..n)]);
        if rng.gen() {
            v.not()
        } else {
            v
        }
    };
    let equations = (0..neq)
        .map(|_| match rng.gen_range(0..8) {
            0 => Equation::new(lit(rng), BoolFunc::constant(rng.gen())),
            1 => Equation::new(lit(rng), lit(rng)),
            2 => Equation::new(lit(rng).xor(&lit(rng)), BoolFunc::constant(rng.gen())),
            _ => {
                let depth = rng.gen_range(1..5);
                Equation::new(random_func(rng, &vs, depth), random_func(rng, &vs, depth))
            }
        })
        .collect();
    BoolSystem::new(equations, vs.iter().copied())
}

/// `m` clauses of `k` distinct variables each over `n` variables, with
/// uniformly random signs.
pub fn random_kcnf<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, k: usize) -> CnfSet {
    let vs = vars(n);
    let clauses = (0..m)
        .map(|_| {
            let lits = rand::seq::index::sample(rng, n, k.min(n))
                .into_iter()
                .map(|i| Lit::new(vs[i], rng.gen()))
                .collect::<Vec<_>>();
            Clause::new(lits).expect("distinct variables cannot form a tautology")
        })
        .collect();
    CnfSet::new(clauses, n)
}
