//! Runtime checks of the expansion identities, used by the `verify` command.
//!
//! Each check compares the library's result with a direct truth-table
//! computation over the variables involved.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::boolalg::{BoolFunc, Polarity, TruthTable, VarId};
use crate::error::Result;
use crate::expansion::{minterm_consistency, BinOp, CoefficientChoice, OnExpansion};
use crate::onset::{MintermPartition, OnSet};
use crate::random::{random_func, vars};

pub const IDENTITIES: [&str; 11] = [
    "reconstruction",
    "coefficient range",
    "sum",
    "product",
    "complement",
    "exclusive or",
    "composition",
    "dual and star",
    "eliminant projection",
    "minterm theorem",
    "consistency via support",
];

/// Pass and fail counts per identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub counts: BTreeMap<&'static str, (usize, usize)>,
}

impl Report {
    fn record(&mut self, name: &'static str, ok: bool) {
        let e = self.counts.entry(name).or_default();
        if ok {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.counts.values().all(|&(_, fail)| fail == 0)
    }

    pub fn merge(&mut self, other: &Report) {
        for (&k, &(p, f)) in &other.counts {
            let e = self.counts.entry(k).or_default();
            e.0 += p;
            e.1 += f;
        }
    }
}

fn table(f: &BoolFunc, vs: &[VarId]) -> Result<TruthTable> {
    f.truth_table(vs)
}

/// Checks every identity for `f`, `g` and `base`. `h` is composed with the
/// expansions of `f` and `g`.
pub fn check_case(f: &BoolFunc, g: &BoolFunc, h: &BoolFunc, base: &OnSet) -> Result<Report> {
    let mut r = Report::default();
    let mut all = f.vars();
    all.extend(g.vars());
    all.extend(base.vars());
    let vs: Vec<_> = all.into_iter().collect();
    let n = vs.len();
    let ft = table(f, &vs)?;
    let gt = table(g, &vs)?;

    let mut choices = vec![CoefficientChoice::Canonical];
    if base.terms().is_some() {
        choices.push(CoefficientChoice::Ratio);
    }
    for choice in choices {
        let ef = OnExpansion::expand(f, base, choice)?;
        let eg = OnExpansion::expand(g, base, choice)?;
        r.record("reconstruction", table(&ef.reconstruct(), &vs)? == ft);
        r.record("coefficient range", ef.coefficients_in_range(f)?);
        for (name, op, want) in [
            ("sum", BinOp::Or, ft.or(&gt)),
            ("product", BinOp::And, ft.and(&gt)),
            ("exclusive or", BinOp::Xor, ft.xor(&gt)),
        ] {
            r.record(name, table(&ef.combine(&eg, op)?.reconstruct(), &vs)? == want);
        }
        r.record("complement", table(&ef.negate().reconstruct(), &vs)? == ft.not());

        let hv: Vec<_> = h.vars().into_iter().collect();
        if !hv.is_empty() && hv.len() <= 2 {
            let args = [&ef, &eg][..hv.len()].iter().map(|e| (*e).clone()).collect::<Vec<_>>();
            let bind: HashMap<_, _> = hv.iter().copied().zip([f.clone(), g.clone()]).collect();
            let direct = h.compose(&bind);
            r.record(
                "composition",
                table(&OnExpansion::compose(h, &args)?.reconstruct(), &vs)? == table(&direct, &vs)?,
            );
        }

        let conj = ef.conjugate();
        let mask = (1u64 << n) - 1;
        let ct = table(&conj.reconstruct(), &vs)?;
        let star_ok = (0..1u64 << n).all(|i| ct.get(i) == ft.get(i ^ mask));
        r.record("dual and star", star_ok);

        let hit = ef.consistency_via_support()?;
        let ok = match &hit {
            Some((k, q)) => !f.eval(q)? && base.member(*k).eval(q)?,
            None => ft.is_one(),
        } && hit.is_some() != ft.is_one();
        r.record("consistency via support", ok);
    }

    let dt = table(&f.dual(), &vs)?;
    let mask = (1u64 << n) - 1;
    r.record("dual and star", (0..1u64 << n).all(|i| dt.get(i) == !ft.get(i ^ mask)));

    let fv: Vec<_> = f.vars().into_iter().collect();
    if let Some(&x) = fv.first() {
        let pos = vs.iter().position(|&v| v == x).expect("x is listed");
        let bit = 1u64 << (n - 1 - pos);
        let et = table(&f.eliminant(x)?, &vs)?;
        let ok = (0..1u64 << n).all(|i| et.get(i) == (ft.get(i | bit) && ft.get(i & !bit)));
        r.record("eliminant projection", ok);

        let x1 = &fv[..fv.len().min(2)];
        r.record("minterm theorem", minterm_consistency(f, x1)? == !ft.is_one());
    }
    Ok(r)
}

/// A random ON set over `vs`: a term chain, or a random minterm partition
/// (whose blocks may hold several minterms).
pub fn random_onset<R: Rng + ?Sized>(rng: &mut R, vs: &[VarId]) -> OnSet {
    if rng.gen() {
        let mut pool = vs.to_vec();
        let r = rng.gen_range(1..=pool.len());
        let lits: Vec<_> = (0..r)
            .map(|_| {
                let v = pool.swap_remove(rng.gen_range(0..pool.len()));
                (v, Polarity::from_value(rng.gen()))
            })
            .collect();
        OnSet::term_chain(&lits).expect("distinct variables")
    } else {
        let m = rng.gen_range(1..=(1usize << vs.len()).min(6));
        let mut blocks = vec![Vec::new(); m];
        for j in 0..1u64 << vs.len() {
            blocks[rng.gen_range(0..m)].push(j);
        }
        blocks.retain(|b| !b.is_empty());
        let p = MintermPartition::new(vs.len(), blocks).expect("blocks partition the cube");
        OnSet::from_minterm_partition(&p, vs).expect("valid partition")
    }
}

/// `trials` random cases over `n` variables.
pub fn run_random(n: usize, trials: usize, seed: u64) -> Result<Report> {
    let mut rng = StdRng::seed_from_u64(seed);
    let vs = vars(n.max(1));
    let hv = [VarId(n as u32 + 100), VarId(n as u32 + 101)];
    let mut report = Report::default();
    for _ in 0..trials {
        let f = random_func(&mut rng, &vs, 4);
        let g = random_func(&mut rng, &vs, 4);
        let h = random_func(&mut rng, &hv, 2);
        let base = random_onset(&mut rng, &vs);
        report.merge(&check_case(&f, &g, &h, &base)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_suite_passes() {
        for n in 1..=5 {
            let r = run_random(n, 40, n as u64).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.counts.len() >= 10);
        }
    }
}
