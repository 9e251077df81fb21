//! CNF sets: DIMACS I/O, unit and pure-literal reductions, pure-literal ON
//! chains and the generalized DPLL driver [`solve_sat`].
//!
//! DIMACS variable `i` is [`VarId`]`(i - 1)`.

mod dimacs;
mod solve;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub use dimacs::{emit_dimacs, parse_dimacs, parse_dimacs_with, ParsedDimacs};
pub use solve::{choose_split, decompose, simplify, solve_sat, solve_sat_streaming};

use crate::boolalg::{Assignment, BoolFunc, PartialAssignment, Polarity, VarId};
use crate::error::{Error, Result};
use crate::onset::OnSet;
use crate::solver::{BoolSystem, Equation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: VarId,
    pub positive: bool,
}

impl Lit {
    pub fn new(var: VarId, positive: bool) -> Self {
        Lit { var, positive }
    }

    pub fn pos(var: VarId) -> Self {
        Lit::new(var, true)
    }

    pub fn neg(var: VarId) -> Self {
        Lit::new(var, false)
    }

    /// From a nonzero DIMACS integer.
    pub fn from_dimacs(x: i64) -> Self {
        debug_assert!(x != 0);
        Lit::new(VarId((x.unsigned_abs() - 1) as u32), x > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var.0 as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn polarity(self) -> Polarity {
        Polarity::from_value(self.positive)
    }

    pub fn negate(self) -> Self {
        Lit::new(self.var, !self.positive)
    }

    /// Truth value under `value` for the variable.
    pub fn holds(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals over distinct variables, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// Builds a clause, dropping repeated literals. Returns `None` for a
    /// tautology (a variable in both polarities).
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Option<Clause> {
        let mut by_var: BTreeMap<VarId, bool> = BTreeMap::new();
        for l in lits {
            if *by_var.entry(l.var).or_insert(l.positive) != l.positive {
                return None;
            }
        }
        Some(Clause(by_var.into_iter().map(|(v, p)| Lit::new(v, p)).collect()))
    }

    /// Clause from DIMACS integers; panics on a tautology.
    pub fn from_dimacs(lits: &[i64]) -> Clause {
        Clause::new(lits.iter().map(|&x| Lit::from_dimacs(x))).expect("tautological clause")
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lit_of(&self, v: VarId) -> Option<Lit> {
        self.0.binary_search_by_key(&v, |l| l.var).ok().map(|i| self.0[i])
    }

    pub fn to_func(&self) -> BoolFunc {
        BoolFunc::or_all(self.0.iter().map(|l| BoolFunc::literal(l.var, l.polarity())))
    }

    /// `None` if `p` satisfies the clause, otherwise the clause without its
    /// false literals.
    pub fn reduce(&self, p: &PartialAssignment) -> Option<Clause> {
        let mut rest = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match p.get(l.var) {
                Some(b) if l.holds(b) => return None,
                Some(_) => {}
                None => rest.push(l),
            }
        }
        Some(Clause(rest))
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        for l in &self.0 {
            if l.holds(a.get(l.var)?) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// An empty clause arose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conflict;

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("empty clause")
    }
}

impl std::error::Error for Conflict {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfSet {
    pub clauses: Vec<Clause>,
    /// Variables are `VarId(0) .. VarId(num_vars)`.
    pub num_vars: usize,
}

impl CnfSet {
    /// The variable count grows to cover every clause.
    pub fn new(clauses: Vec<Clause>, num_vars: usize) -> Self {
        let max = clauses
            .iter()
            .flat_map(|c| c.lits())
            .map(|l| l.var.index() + 1)
            .max()
            .unwrap_or(0);
        CnfSet {
            clauses,
            num_vars: num_vars.max(max),
        }
    }

    pub fn from_dimacs_rows(rows: &[&[i64]], num_vars: usize) -> Self {
        CnfSet::new(rows.iter().map(|r| Clause::from_dimacs(r)).collect(), num_vars)
    }

    pub fn vars(&self) -> Vec<VarId> {
        (0..self.num_vars as u32).map(VarId).collect()
    }

    pub fn occurring_vars(&self) -> BTreeSet<VarId> {
        self.clauses.iter().flat_map(|c| c.lits().iter().map(|l| l.var)).collect()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn satisfied_by(&self, a: &Assignment) -> Result<bool> {
        for c in &self.clauses {
            if !c.eval(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Each clause as the equation `l_1 + ... + l_m = 1`.
    pub fn to_system(&self) -> BoolSystem {
        let eqs = self
            .clauses
            .iter()
            .map(|c| Equation::new(c.to_func(), BoolFunc::one()))
            .collect();
        BoolSystem::new(eqs, self.vars())
    }

    /// Clauses as a set, ignoring order.
    pub fn clause_set(&self) -> BTreeSet<Clause> {
        self.clauses.iter().cloned().collect()
    }

    fn lit_counts(&self) -> HashMap<VarId, (usize, usize)> {
        let mut counts: HashMap<VarId, (usize, usize)> = HashMap::new();
        for c in &self.clauses {
            for l in c.lits() {
                let e = counts.entry(l.var).or_default();
                if l.positive {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        counts
    }
}

/// Variables occurring in only one polarity, in variable order.
pub fn find_pure_literals(c: &CnfSet) -> Vec<Lit> {
    let mut out: Vec<_> = c
        .lit_counts()
        .into_iter()
        .filter_map(|(v, (p, n))| match (p, n) {
            (_, 0) => Some(Lit::pos(v)),
            (0, _) => Some(Lit::neg(v)),
            _ => None,
        })
        .collect();
    out.sort();
    out
}

/// `C/p`: satisfied clauses dropped, false literals removed.
pub fn assign_and_reduce(c: &CnfSet, p: &PartialAssignment) -> Result<CnfSet, Conflict> {
    let mut clauses = Vec::with_capacity(c.clauses.len());
    for cl in &c.clauses {
        if let Some(r) = cl.reduce(p) {
            if r.is_empty() {
                return Err(Conflict);
            }
            clauses.push(r);
        }
    }
    Ok(CnfSet {
        clauses,
        num_vars: c.num_vars,
    })
}

/// The chain `l_1', l_1 l_2', ..., l_1 ... l_r` over the pure literals.
pub fn pure_literal_chain(c: &CnfSet) -> Result<OnSet> {
    let pures = find_pure_literals(c);
    if pures.is_empty() {
        return Err(Error::NoPureLiterals);
    }
    OnSet::term_chain(&pures.iter().map(|l| (l.var, l.polarity())).collect::<Vec<_>>())
}

/// One round of pure-literal assignment. The pure literals of `c` are made
/// true in variable order, skipping any whose clauses were all satisfied by
/// earlier ones in the round. Returns the residual set and the literals
/// assigned; both are unchanged when `c` has no pure literals.
pub fn pure_literal_round(c: &CnfSet) -> (CnfSet, Vec<Lit>) {
    let mut live = vec![true; c.clauses.len()];
    let mut assigned = Vec::new();
    for l in find_pure_literals(c) {
        let mut hit = false;
        for (i, cl) in c.clauses.iter().enumerate() {
            if live[i] && cl.lit_of(l.var).is_some() {
                live[i] = false;
                hit = true;
            }
        }
        if hit {
            assigned.push(l);
        }
    }
    let clauses = c
        .clauses
        .iter()
        .zip(&live)
        .filter(|(_, &keep)| keep)
        .map(|(cl, _)| cl.clone())
        .collect();
    (
        CnfSet {
            clauses,
            num_vars: c.num_vars,
        },
        assigned,
    )
}

pub fn lits_to_partial(lits: &[Lit]) -> Result<PartialAssignment> {
    PartialAssignment::from_pairs(lits.iter().map(|l| (l.var, l.positive)))
}

#[cfg(test)]
mod tests;
