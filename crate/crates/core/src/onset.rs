//! Orthonormal (ON) sets: reduced families of pairwise-orthogonal functions
//! summing to 1.
//!
//! Sets whose members are all terms are kept as [`Term`]s so the solver can
//! read each member's partial assignment directly.

use std::collections::BTreeSet;

use crate::boolalg::{Assignment, BoolFunc, PartialAssignment, Polarity, Term, TruthTable, VarId};
use crate::error::{Error, OnViolation, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Members {
    Functions(Vec<BoolFunc>),
    Terms(Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnSet {
    members: Members,
}

/// The solution set of `φ_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    /// Every point of a general member's support.
    Points(Vec<Assignment>),
    /// A term's partial assignment; every extension over `free` is a solution.
    Cube {
        fixed: PartialAssignment,
        free: Vec<VarId>,
    },
}

impl Support {
    pub fn assignments(&self) -> Box<dyn Iterator<Item = Assignment> + '_> {
        match self {
            Support::Points(points) => Box::new(points.iter().cloned()),
            Support::Cube { fixed, free } => Box::new((0..1u64 << free.len()).map(move |i| {
                fixed
                    .complete(&Assignment::from_index(free, i))
                    .expect("free variables are disjoint from the term")
            })),
        }
    }
}

/// A partition `M_1 ∪ … ∪ M_m` of the minterm indices `0..2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MintermPartition {
    nvars: usize,
    blocks: Vec<Vec<u64>>,
}

impl MintermPartition {
    pub fn new(nvars: usize, blocks: Vec<Vec<u64>>) -> Result<Self> {
        if nvars >= 32 {
            return Err(Error::InvalidPartition(format!("{nvars} variables is too many")));
        }
        let total = 1u64 << nvars;
        let mut seen = vec![false; total as usize];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &j in block {
                if j >= total {
                    return Err(Error::InvalidPartition(format!("minterm {j} out of range")));
                }
                if std::mem::replace(&mut seen[j as usize], true) {
                    return Err(Error::InvalidPartition(format!("minterm {j} repeated")));
                }
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("minterm {j} not covered")));
        }
        Ok(MintermPartition { nvars, blocks })
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }
}

/// Minterm `j` over `vars`; the first variable is the most significant bit.
pub fn minterm(vars: &[VarId], j: u64) -> Term {
    let n = vars.len();
    Term::new(
        vars.iter()
            .enumerate()
            .map(|(k, &v)| (v, Polarity::from_value((j >> (n - 1 - k)) & 1 == 1))),
    )
    .expect("minterm variables must be distinct")
}

fn validate_tables(tables: &[TruthTable]) -> Vec<OnViolation> {
    let mut violations = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        if t.is_zero() {
            violations.push(OnViolation::NotReduced(i));
        }
    }
    for i in 0..tables.len() {
        for j in i + 1..tables.len() {
            if !tables[i].and(&tables[j]).is_zero() {
                violations.push(OnViolation::NotOrthogonal(i, j));
            }
        }
    }
    let sum = tables.iter().skip(1).fold(tables.first().cloned(), |acc, t| acc.map(|a| a.or(t)));
    if !sum.is_some_and(|s| s.is_one()) {
        violations.push(OnViolation::NotNormal);
    }
    violations
}

impl OnSet {
    /// Checks orthogonality, normality and reducedness exhaustively over the
    /// variables that appear, reporting every violation.
    pub fn validate(candidate: Vec<BoolFunc>) -> Result<OnSet> {
        let set = OnSet {
            members: Members::Functions(candidate),
        };
        set.check()?;
        Ok(set)
    }

    /// Same as [`OnSet::validate`] for a list of terms.
    pub fn from_terms(terms: Vec<Term>) -> Result<OnSet> {
        let set = OnSet {
            members: Members::Terms(terms),
        };
        set.check()?;
        Ok(set)
    }

    /// Re-runs the exhaustive validity check on this set.
    pub fn check(&self) -> Result<()> {
        let vars: Vec<_> = self.vars().into_iter().collect();
        let tables = (0..self.order())
            .map(|i| self.member(i).truth_table(&vars))
            .collect::<Result<Vec<_>>>()?;
        let violations = validate_tables(&tables);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidOnSet(violations))
        }
    }

    /// `y_1 = u_1'`, `y_j = u_1…u_{j-1}u_j'`, `y_m = u_1…u_{m-1}`.
    ///
    /// Always orthogonal and normal. A member that is identically 0 is an
    /// error rather than being dropped.
    pub fn chain_from_elements(u: &[BoolFunc]) -> Result<OnSet> {
        if u.is_empty() {
            return Err(Error::EmptyChain);
        }
        let mut members = Vec::with_capacity(u.len() + 1);
        let mut prefix = BoolFunc::one();
        for uj in u {
            members.push(prefix.and(&uj.not()));
            prefix = prefix.and(uj);
        }
        members.push(prefix);
        for (i, m) in members.iter().enumerate() {
            if m.is_unsat()? {
                return Err(Error::NotReduced(i));
            }
        }
        Ok(OnSet {
            members: Members::Functions(members),
        })
    }

    /// `φ_i = Σ_{j ∈ M_i} μ_j`. All-singleton partitions give a minterm term set.
    pub fn from_minterm_partition(p: &MintermPartition, vars: &[VarId]) -> Result<OnSet> {
        if vars.len() != p.nvars {
            return Err(Error::ArityMismatch {
                expected: p.nvars,
                found: vars.len(),
            });
        }
        let distinct: BTreeSet<_> = vars.iter().collect();
        if distinct.len() != vars.len() {
            let dup = vars.iter().find(|v| vars.iter().filter(|w| w == v).count() > 1).unwrap();
            return Err(Error::DuplicateVariable(*dup));
        }
        let members = if p.blocks.iter().all(|b| b.len() == 1) {
            Members::Terms(p.blocks.iter().map(|b| minterm(vars, b[0])).collect())
        } else {
            Members::Functions(
                p.blocks
                    .iter()
                    .map(|b| BoolFunc::or_all(b.iter().map(|&j| minterm(vars, j).to_func())))
                    .collect(),
            )
        };
        Ok(OnSet { members })
    }

    /// `t_1 = l_1'`, `t_2 = l_1 l_2'`, …, `t_{r+1} = l_1 … l_r` over the given
    /// literals.
    pub fn term_chain(literals: &[(VarId, Polarity)]) -> Result<OnSet> {
        if literals.is_empty() {
            return Err(Error::EmptyChain);
        }
        let mut seen = BTreeSet::new();
        for &(v, _) in literals {
            if !seen.insert(v) {
                return Err(Error::DuplicateVariable(v));
            }
        }
        let mut terms = Vec::with_capacity(literals.len() + 1);
        for k in 0..literals.len() {
            let mut lits: Vec<_> = literals[..k].to_vec();
            let (v, p) = literals[k];
            lits.push((v, p.flip()));
            terms.push(Term::new(lits)?);
        }
        terms.push(Term::new(literals.iter().copied())?);
        Ok(OnSet {
            members: Members::Terms(terms),
        })
    }

    /// `ψ_i = Σ_{φ ∈ F_i} φ` for a partition of the member indices.
    pub fn coarsen(&self, grouping: &[Vec<usize>]) -> Result<OnSet> {
        let m = self.order();
        let mut seen = vec![false; m];
        for (g, group) in grouping.iter().enumerate() {
            if group.is_empty() {
                return Err(Error::InvalidPartition(format!("group {g} is empty")));
            }
            for &i in group {
                if i >= m || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!("index {i} invalid or repeated")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition("grouping does not cover every member".into()));
        }
        let members = match &self.members {
            Members::Terms(ts) if grouping.iter().all(|g| g.len() == 1) => {
                Members::Terms(grouping.iter().map(|g| ts[g[0]].clone()).collect())
            }
            _ => Members::Functions(
                grouping
                    .iter()
                    .map(|g| BoolFunc::or_all(g.iter().map(|&i| self.member(i))))
                    .collect(),
            ),
        };
        Ok(OnSet { members })
    }

    /// `{φ_1k φ_2l}`, `k` major. Overlapping variable sets may make a
    /// product vanish, which is reported as [`Error::ProductNotReduced`].
    pub fn product(&self, other: &OnSet) -> Result<OnSet> {
        let members = match (&self.members, &other.members) {
            (Members::Terms(a), Members::Terms(b)) => {
                let mut out = Vec::with_capacity(a.len() * b.len());
                for (k, s) in a.iter().enumerate() {
                    for (l, t) in b.iter().enumerate() {
                        out.push(s.product(t).ok_or(Error::ProductNotReduced(k, l))?);
                    }
                }
                Members::Terms(out)
            }
            _ => {
                let mut out = Vec::with_capacity(self.order() * other.order());
                for k in 0..self.order() {
                    for l in 0..other.order() {
                        let p = self.member(k).and(&other.member(l));
                        if p.is_unsat()? {
                            return Err(Error::ProductNotReduced(k, l));
                        }
                        out.push(p);
                    }
                }
                Members::Functions(out)
            }
        };
        Ok(OnSet { members })
    }

    /// `Φ*`: every member conjugated, `φ_i(X*)`.
    pub fn conjugate(&self) -> OnSet {
        let members = match &self.members {
            Members::Terms(ts) => Members::Terms(ts.iter().map(Term::conjugate).collect()),
            Members::Functions(fs) => Members::Functions(fs.iter().map(BoolFunc::conjugate).collect()),
        };
        OnSet { members }
    }

    pub fn order(&self) -> usize {
        match &self.members {
            Members::Functions(fs) => fs.len(),
            Members::Terms(ts) => ts.len(),
        }
    }

    pub fn members(&self) -> &Members {
        &self.members
    }

    pub fn member(&self, i: usize) -> BoolFunc {
        match &self.members {
            Members::Functions(fs) => fs[i].clone(),
            Members::Terms(ts) => ts[i].to_func(),
        }
    }

    pub fn functions(&self) -> Vec<BoolFunc> {
        (0..self.order()).map(|i| self.member(i)).collect()
    }

    pub fn terms(&self) -> Option<&[Term]> {
        match &self.members {
            Members::Terms(ts) => Some(ts),
            Members::Functions(_) => None,
        }
    }

    pub fn term(&self, i: usize) -> Option<&Term> {
        self.terms().map(|ts| &ts[i])
    }

    /// Variables appearing in any member.
    pub fn vars(&self) -> BTreeSet<VarId> {
        match &self.members {
            Members::Terms(ts) => ts.iter().flat_map(Term::vars).collect(),
            Members::Functions(fs) => fs.iter().flat_map(BoolFunc::vars).collect(),
        }
    }

    /// Solutions of `φ_i = 1` over `vars`. Term members are returned as a
    /// partial assignment plus the free variables.
    pub fn support(&self, i: usize, vars: &[VarId]) -> Result<Support> {
        match &self.members {
            Members::Terms(ts) => {
                let t = &ts[i];
                if let Some(v) = t.vars().find(|v| !vars.contains(v)) {
                    return Err(Error::UndeclaredVariable(v));
                }
                Ok(Support::Cube {
                    fixed: t.partial_assignment(),
                    free: vars.iter().copied().filter(|&v| t.polarity(v).is_none()).collect(),
                })
            }
            Members::Functions(fs) => Ok(Support::Points(fs[i].support_over(vars)?)),
        }
    }
}
