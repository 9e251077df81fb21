//! Orthonormal expansions `f = Σ α_i φ_i`, coefficient arithmetic, and the
//! consistency conditions for `f = 0` that follow from them.
//!
//! Only [`OnExpansion::consistency_via_support`] and [`minterm_consistency`]
//! are exact criteria. [`OnExpansion::necessary_condition`] and
//! [`OnExpansion::sufficient_condition`] are one-way and are never used by the
//! solver.

use std::collections::{BTreeSet, HashMap};

use crate::boolalg::{Assignment, BoolFunc, VarId};
use crate::error::{Error, Result};
use crate::onset::{minterm, Members, OnSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientChoice {
    /// `α_i = f φ_i`, the lower end of the admissible interval.
    Canonical,
    /// `α_i = f/t_i`; only for term bases.
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Xor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnExpansion {
    base: OnSet,
    coefficients: Vec<BoolFunc>,
    vars: BTreeSet<VarId>,
}

impl OnExpansion {
    pub fn expand(f: &BoolFunc, base: &OnSet, choice: CoefficientChoice) -> Result<OnExpansion> {
        let coefficients = match (choice, base.members()) {
            (CoefficientChoice::Ratio, Members::Terms(ts)) => ts.iter().map(|t| f.ratio(t)).collect(),
            (CoefficientChoice::Ratio, Members::Functions(_)) => return Err(Error::RatioUnavailable(0)),
            (CoefficientChoice::Canonical, _) => (0..base.order()).map(|i| f.and(&base.member(i))).collect(),
        };
        let mut vars = f.vars();
        vars.extend(base.vars());
        Ok(OnExpansion {
            base: base.clone(),
            coefficients,
            vars,
        })
    }

    /// Ratio coefficients for term bases, canonical otherwise.
    pub fn expand_default(f: &BoolFunc, base: &OnSet) -> OnExpansion {
        let choice = if base.terms().is_some() {
            CoefficientChoice::Ratio
        } else {
            CoefficientChoice::Canonical
        };
        Self::expand(f, base, choice).expect("choice matches the base")
    }

    pub fn base(&self) -> &OnSet {
        &self.base
    }

    pub fn coefficients(&self) -> &[BoolFunc] {
        &self.coefficients
    }

    /// Variables of the expanded function and of the base.
    pub fn vars(&self) -> &BTreeSet<VarId> {
        &self.vars
    }

    fn var_list(&self) -> Vec<VarId> {
        self.vars.iter().copied().collect()
    }

    /// `Σ α_i φ_i`.
    pub fn reconstruct(&self) -> BoolFunc {
        BoolFunc::or_all(
            self.coefficients
                .iter()
                .enumerate()
                .map(|(i, a)| a.and(&self.base.member(i))),
        )
    }

    /// Whether every coefficient lies in `[f φ_i, f + φ_i']`.
    pub fn coefficients_in_range(&self, f: &BoolFunc) -> Result<bool> {
        let mut vars = self.vars.clone();
        vars.extend(f.vars());
        let vars: Vec<_> = vars.into_iter().collect();
        let ft = f.truth_table(&vars)?;
        for (i, a) in self.coefficients.iter().enumerate() {
            let phi = self.base.member(i).truth_table(&vars)?;
            let at = a.truth_table(&vars)?;
            if !ft.and(&phi).leq(&at) || !at.leq(&ft.or(&phi.not())) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn same_base(&self, other: &OnExpansion) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    /// Coefficient-wise `α_i op β_i`, which expands `f op g`.
    pub fn combine(&self, other: &OnExpansion, op: BinOp) -> Result<OnExpansion> {
        self.same_base(other)?;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| match op {
                BinOp::And => a.and(b),
                BinOp::Or => a.or(b),
                BinOp::Xor => a.xor(b),
            })
            .collect();
        Ok(OnExpansion {
            base: self.base.clone(),
            coefficients,
            vars: self.vars.union(&other.vars).copied().collect(),
        })
    }

    /// Coefficient-wise complement, which expands `f'`.
    pub fn negate(&self) -> OnExpansion {
        OnExpansion {
            base: self.base.clone(),
            coefficients: self.coefficients.iter().map(BoolFunc::not).collect(),
            vars: self.vars.clone(),
        }
    }

    /// Expansion of `f(g_1, …, g_n)` from expansions of the `g_i` over a
    /// shared base: coefficient `j` is `f(β_1j, …, β_nj)`. The `g_i` bind the
    /// variables of `f` in ascending order.
    pub fn compose(f: &BoolFunc, args: &[OnExpansion]) -> Result<OnExpansion> {
        let fvars: Vec<_> = f.vars().into_iter().collect();
        if fvars.len() != args.len() {
            return Err(Error::ArityMismatch {
                expected: fvars.len(),
                found: args.len(),
            });
        }
        let Some(first) = args.first() else {
            return Err(Error::ArityMismatch { expected: 1, found: 0 });
        };
        for g in &args[1..] {
            first.same_base(g)?;
        }
        let coefficients = (0..first.base.order())
            .map(|j| {
                let bindings: HashMap<VarId, BoolFunc> = fvars
                    .iter()
                    .zip(args)
                    .map(|(&v, g)| (v, g.coefficients[j].clone()))
                    .collect();
                f.compose(&bindings)
            })
            .collect();
        let vars = args.iter().flat_map(|g| g.vars.iter().copied()).collect();
        Ok(OnExpansion {
            base: first.base.clone(),
            coefficients,
            vars,
        })
    }

    /// Indices `i` for which `α_i = 0` is consistent. An empty result proves
    /// `f = 0` inconsistent; a nonempty one proves nothing.
    pub fn necessary_condition(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, a) in self.coefficients.iter().enumerate() {
            let vars: Vec<_> = a.vars().into_iter().collect();
            if a.find_zero(&vars)?.is_some() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// A point where every coefficient vanishes. Such a point is a zero of
    /// `f`, but `f = 0` may be consistent without one existing.
    pub fn sufficient_condition(&self) -> Result<Option<Assignment>> {
        let sum = BoolFunc::or_all(self.coefficients.iter().cloned());
        sum.find_zero(&self.var_list())
    }

    /// First `(k, q)` with `q ∈ supp φ_k` and `α_k(q) = 0`, which is exactly a
    /// zero of `f`; `None` iff `f = 0` is inconsistent.
    pub fn consistency_via_support(&self) -> Result<Option<(usize, Assignment)>> {
        let vars = self.var_list();
        for (k, a) in self.coefficients.iter().enumerate() {
            match self.base.members() {
                Members::Terms(ts) => {
                    let q = ts[k].partial_assignment();
                    let free: Vec<_> = vars.iter().copied().filter(|v| !q.contains(*v)).collect();
                    if let Some(rest) = a.cofactor(&q).find_zero(&free)? {
                        return Ok(Some((k, q.complete(&rest)?)));
                    }
                }
                Members::Functions(fs) => {
                    if let Some(p) = a.or(&fs[k].not()).find_zero(&vars)? {
                        return Ok(Some((k, p)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// The expansion of `f(X*)` over `Φ*` with coefficients `α_i(X*)`.
    pub fn conjugate(&self) -> OnExpansion {
        OnExpansion {
            base: self.base.conjugate(),
            coefficients: self.coefficients.iter().map(BoolFunc::conjugate).collect(),
            vars: self.vars.clone(),
        }
    }
}

/// `f(X*)`, whose zero set is the star of `V(f)`.
pub fn conjugate(f: &BoolFunc) -> BoolFunc {
    f.conjugate()
}

/// Decides `f = 0` through the minterm expansion over `x1`: consistent iff
/// `Π_i (f/μ_i)(X_2) = 0` is consistent.
pub fn minterm_consistency(f: &BoolFunc, x1: &[VarId]) -> Result<bool> {
    let fvars = f.vars();
    if let Some(v) = x1.iter().find(|v| !fvars.contains(v)) {
        return Err(Error::VariableAbsent(*v));
    }
    crate::boolalg::check_cap(x1.len())?;
    let x2: Vec<_> = fvars.iter().copied().filter(|v| !x1.contains(v)).collect();
    let product = BoolFunc::and_all((0..1u64 << x1.len()).map(|j| f.ratio(&minterm(x1, j))));
    Ok(product.find_zero(&x2)?.is_some())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::boolalg::{Polarity, Term};
    use crate::random::{random_func, vars};

    fn x(i: u32) -> BoolFunc {
        BoolFunc::var(VarId(i))
    }

    fn shannon_base(i: u32) -> OnSet {
        OnSet::from_terms(vec![
            Term::literal(VarId(i), Polarity::Positive),
            Term::literal(VarId(i), Polarity::Negative),
        ])
        .unwrap()
    }

    fn three_base() -> OnSet {
        OnSet::validate(vec![x(0), !x(0) & x(1), !x(0) & !x(1)]).unwrap()
    }

    /// Independent consistency oracle: does `f` have a zero over `n` vars?
    fn has_zero(f: &BoolFunc, n: usize) -> bool {
        let vs = vars(n);
        (0..1u64 << n).any(|i| !f.eval(&Assignment::from_index(&vs, i)).unwrap())
    }

    #[test]
    fn ratio_over_shannon_base_gives_cofactors() {
        let mut rng = StdRng::seed_from_u64(3);
        let f = random_func(&mut rng, &vars(3), 4);
        let e = OnExpansion::expand(&f, &shannon_base(0), CoefficientChoice::Ratio).unwrap();
        let hi = f.substitute(&|v| (v == VarId(0)).then(BoolFunc::one));
        let lo = f.substitute(&|v| (v == VarId(0)).then(BoolFunc::zero));
        assert!(e.coefficients()[0].equivalent(&hi).unwrap());
        assert!(e.coefficients()[1].equivalent(&lo).unwrap());
        assert!(e.reconstruct().equivalent(&f).unwrap());
    }

    #[test]
    fn canonical_of_one_is_the_base() {
        let base = three_base();
        let e = OnExpansion::expand(&BoolFunc::one(), &base, CoefficientChoice::Canonical).unwrap();
        for i in 0..3 {
            assert!(e.coefficients()[i].equivalent(&base.member(i)).unwrap());
        }
        assert!(e.reconstruct().equivalent(&BoolFunc::one()).unwrap());
    }

    #[test]
    fn ratio_rejected_for_function_base() {
        let r = OnExpansion::expand(&x(0), &three_base(), CoefficientChoice::Ratio);
        assert_eq!(r, Err(Error::RatioUnavailable(0)));
    }

    #[test]
    fn negate_and_self_xor() {
        let f = (x(0) & x(1)) ^ x(2);
        let e = OnExpansion::expand_default(&f, &three_base());
        assert!(e.negate().reconstruct().equivalent(&f.not()).unwrap());
        assert_eq!(e.combine(&e, BinOp::Xor).unwrap().reconstruct().is_unsat(), Ok(true));
        let other = OnExpansion::expand_default(&f, &shannon_base(0));
        assert_eq!(e.combine(&other, BinOp::And), Err(Error::BaseMismatch));
    }

    #[test]
    fn compose_projection_and_xor() {
        let base = three_base();
        let g1 = OnExpansion::expand_default(&(x(1) | x(2)), &base);
        let g2 = OnExpansion::expand_default(&(x(0) & !x(2)), &base);
        let proj = OnExpansion::compose(&x(7), std::slice::from_ref(&g1)).unwrap();
        assert!(proj.reconstruct().equivalent(&g1.reconstruct()).unwrap());

        let f = x(7) ^ x(8);
        let c = OnExpansion::compose(&f, &[g1.clone(), g2.clone()]).unwrap();
        let direct = g1.combine(&g2, BinOp::Xor).unwrap();
        assert!(c.reconstruct().equivalent(&direct.reconstruct()).unwrap());

        assert_eq!(
            OnExpansion::compose(&f, &[g1]).unwrap_err(),
            Error::ArityMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn necessary_condition_is_one_way() {
        let base = shannon_base(0);
        let e = OnExpansion::expand(&BoolFunc::one(), &base, CoefficientChoice::Canonical).unwrap();
        assert_eq!(e.necessary_condition().unwrap(), vec![0, 1]);
        assert_eq!(e.consistency_via_support().unwrap(), None);

        let e = OnExpansion::expand(&x(0), &base, CoefficientChoice::Ratio).unwrap();
        assert_eq!(e.coefficients()[0].as_const(), Some(true));
        assert_eq!(e.coefficients()[1].as_const(), Some(false));
        assert_eq!(e.necessary_condition().unwrap(), vec![1]);
    }

    #[test]
    fn sufficient_condition_is_one_way() {
        let e = OnExpansion::expand(&BoolFunc::zero(), &shannon_base(0), CoefficientChoice::Ratio).unwrap();
        assert!(e.sufficient_condition().unwrap().is_some());

        let e = OnExpansion::expand(&x(0), &shannon_base(0), CoefficientChoice::Ratio).unwrap();
        assert_eq!(e.sufficient_condition().unwrap(), None);
        assert!(e.consistency_via_support().unwrap().is_some());
    }

    #[test]
    fn minterm_consistency_examples() {
        assert_eq!(minterm_consistency(&(x(0) ^ x(1)), &[VarId(0)]), Ok(true));
        let one = BoolFunc::one();
        assert_eq!(minterm_consistency(&one, &[]), Ok(false));
        assert_eq!(minterm_consistency(&x(0), &[VarId(1)]), Err(Error::VariableAbsent(VarId(1))));
    }

    #[test]
    fn support_witness_example() {
        // f = x'y over {x, x'}: first hit is x = 1, y = 0
        let f = !x(0) & x(1);
        let e = OnExpansion::expand_default(&f, &shannon_base(0));
        let (k, q) = e.consistency_via_support().unwrap().unwrap();
        assert_eq!(k, 0);
        assert_eq!(q.to_index(&vars(2)), 0b10);
        assert_eq!(e.consistency_via_support().unwrap().map(|(_, q)| f.eval(&q).unwrap()), Some(false));
        let e = OnExpansion::expand_default(&BoolFunc::one(), &shannon_base(0));
        assert_eq!(e.consistency_via_support().unwrap(), None);
    }

    #[test]
    fn conjugate_examples() {
        assert!(conjugate(&x(0)).equivalent(&x(0).not()).unwrap());
        let base = OnSet::term_chain(&[(VarId(0), Polarity::Positive), (VarId(2), Polarity::Positive)]).unwrap();
        let vs = vars(3);
        let star = base.conjugate();
        for i in 0..base.order() {
            let s: BTreeSet<_> = base.support(i, &vs).unwrap().assignments().map(|a| a.star()).collect();
            let t: BTreeSet<_> = star.support(i, &vs).unwrap().assignments().collect();
            assert_eq!(s, t);
        }
    }

    fn random_term_base(rng: &mut StdRng, n: usize) -> OnSet {
        let depth = rng.gen_range(1..=n.min(3));
        let mut pool = vars(n);
        let lits: Vec<_> = (0..depth)
            .map(|_| (pool.remove(rng.gen_range(0..pool.len())), Polarity::from_value(rng.gen())))
            .collect();
        OnSet::term_chain(&lits).unwrap()
    }

    proptest! {
        #[test]
        fn reconstruction_and_range(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_func(&mut rng, &vars(n), 4);
            let base = random_term_base(&mut rng, n);
            for choice in [CoefficientChoice::Canonical, CoefficientChoice::Ratio] {
                let e = OnExpansion::expand(&f, &base, choice).unwrap();
                prop_assert!(e.reconstruct().equivalent(&f).unwrap());
                prop_assert!(e.coefficients_in_range(&f).unwrap());
            }
        }

        #[test]
        fn combine_reconstructs(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_func(&mut rng, &vars(3), 4);
            let g = random_func(&mut rng, &vars(3), 4);
            let base = three_base();
            let (ef, eg) = (OnExpansion::expand_default(&f, &base), OnExpansion::expand_default(&g, &base));
            prop_assert!(ef.combine(&eg, BinOp::And).unwrap().reconstruct().equivalent(&f.and(&g)).unwrap());
            prop_assert!(ef.combine(&eg, BinOp::Or).unwrap().reconstruct().equivalent(&f.or(&g)).unwrap());
            prop_assert!(ef.combine(&eg, BinOp::Xor).unwrap().reconstruct().equivalent(&f.xor(&g)).unwrap());
        }

        #[test]
        fn compose_matches_substitution(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let outer_vars = [VarId(10), VarId(11)];
            let f = random_func(&mut rng, &outer_vars, 3);
            prop_assume!(f.vars().len() == 2);
            let g1 = random_func(&mut rng, &vars(3), 3);
            let g2 = random_func(&mut rng, &vars(3), 3);
            let base = three_base();
            let c = OnExpansion::compose(
                &f,
                &[OnExpansion::expand_default(&g1, &base), OnExpansion::expand_default(&g2, &base)],
            ).unwrap();
            let direct = f.compose(&HashMap::from([(VarId(10), g1), (VarId(11), g2)]));
            prop_assert!(c.reconstruct().equivalent(&direct).unwrap());
        }

        #[test]
        fn support_consistency_is_exact(seed in any::<u64>(), n in 1usize..=5) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_func(&mut rng, &vars(n), 4);
            let base = random_term_base(&mut rng, n);
            let e = OnExpansion::expand_default(&f, &base);
            let found = e.consistency_via_support().unwrap();
            prop_assert_eq!(found.is_some(), has_zero(&f, n));
            if let Some((k, q)) = found {
                prop_assert!(!f.eval(&q).unwrap());
                prop_assert!(base.member(k).eval(&q).unwrap());
            }
            // necessity: an empty index list proves inconsistency
            if e.necessary_condition().unwrap().is_empty() {
                prop_assert!(!has_zero(&f, n));
            }
            if let Some(w) = e.sufficient_condition().unwrap() {
                prop_assert!(!f.eval(&w).unwrap());
            }
        }

        #[test]
        fn one_value_form_by_negation(seed in any::<u64>(), n in 1usize..=4) {
            // f = 1 consistent iff f' = 0 consistent; necessity on negate(e)
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_func(&mut rng, &vars(n), 4);
            let base = random_term_base(&mut rng, n);
            let e = OnExpansion::expand_default(&f, &base).negate();
            let f_one_consistent = has_zero(&f.not(), n);
            if e.necessary_condition().unwrap().is_empty() {
                prop_assert!(!f_one_consistent);
            }
            prop_assert_eq!(e.consistency_via_support().unwrap().is_some(), f_one_consistent);
        }

        #[test]
        fn minterm_theorem_matches_oracle(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_func(&mut rng, &vars(5), 5);
            let fv: Vec<_> = f.vars().into_iter().collect();
            let k = rng.gen_range(0..=fv.len().min(2));
            let x1: Vec<_> = fv[..k].to_vec();
            prop_assert_eq!(minterm_consistency(&f, &x1).unwrap(), has_zero(&f, 5));
        }

        #[test]
        fn conjugate_zero_set_is_star(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_func(&mut rng, &vars(4), 4);
            let vs = vars(4);
            let z: BTreeSet<_> = f.zero_set_over(&vs).unwrap().iter().map(Assignment::star).collect();
            let zc: BTreeSet<_> = conjugate(&f).zero_set_over(&vs).unwrap().into_iter().collect();
            prop_assert_eq!(z, zc);
            let base = random_term_base(&mut rng, 4);
            let e = OnExpansion::expand_default(&f, &base).conjugate();
            prop_assert!(e.reconstruct().equivalent(&conjugate(&f)).unwrap());
        }
    }
}
