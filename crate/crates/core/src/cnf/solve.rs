use std::collections::BTreeSet;

use super::{assign_and_reduce, find_pure_literals, pure_literal_round, CnfSet, Conflict, Lit};
use crate::boolalg::{Assignment, PartialAssignment, VarId};
use crate::error::Result;
use crate::onset::OnSet;
use crate::solver::engine::{self, Step, Subproblem};
use crate::solver::{solve_roots, Mode, Solution, SolveOutcome, SolverConfig, Status, Trail, TrailEntry};

/// The `split_depth` most frequent variables, each in its majority polarity
/// (ties positive), as a term chain.
pub fn choose_split(c: &CnfSet, cfg: &SolverConfig) -> Result<OnSet> {
    let counts = c.lit_counts();
    let totals = counts.iter().map(|(&v, &(p, n))| (v, p + n)).collect();
    let picked = crate::solver::top_by_frequency(&totals, cfg.split_depth);
    let lits: Vec<_> = picked
        .into_iter()
        .map(|v| {
            let (p, n) = counts[&v];
            (v, Lit::new(v, p >= n).polarity())
        })
        .collect();
    OnSet::term_chain(&lits)
}

/// `C/t_k` for every term of `t`, in term order.
pub fn decompose(c: &CnfSet, t: &OnSet) -> Result<Vec<Result<CnfSet, Conflict>>> {
    let terms = t
        .terms()
        .ok_or_else(|| crate::Error::InvalidConfig("decomposition requires an ON set of terms".into()))?;
    Ok(terms.iter().map(|term| assign_and_reduce(c, &term.partial_assignment())).collect())
}

struct Node {
    cnf: CnfSet,
    /// Unassigned variables.
    vars: BTreeSet<VarId>,
    trail: Trail,
}

impl Node {
    fn assign(mut self, p: &PartialAssignment) -> Option<Node> {
        self.cnf = assign_and_reduce(&self.cnf, p).ok()?;
        for (v, b) in p.iter() {
            self.vars.remove(&v);
            self.trail = self.trail.push(TrailEntry::Fixed(v, b));
        }
        Some(self)
    }

    /// Assigns every unit literal until none remain.
    fn propagate_units(mut self) -> Option<Node> {
        loop {
            let mut p = PartialAssignment::new();
            for cl in &self.cnf.clauses {
                if let [l] = cl.lits() {
                    if p.get(l.var).is_some_and(|b| b != l.positive) {
                        return None;
                    }
                    let _ = p.assign(l.var, l.positive);
                }
            }
            if p.is_empty() {
                return Some(self);
            }
            self = self.assign(&p)?;
        }
    }

    /// Unit propagation to a fixpoint, interleaved in decide mode with
    /// pure-literal rounds.
    fn reduce(self, mode: Mode) -> Option<Node> {
        let mut node = self;
        loop {
            node = node.propagate_units()?;
            if mode == Mode::Enumerate {
                return Some(node);
            }
            let (residual, assigned) = pure_literal_round(&node.cnf);
            if assigned.is_empty() {
                return Some(node);
            }
            node.cnf = residual;
            for l in assigned {
                node.vars.remove(&l.var);
                node.trail = node.trail.push(TrailEntry::Fixed(l.var, l.positive));
            }
        }
    }

    fn solution(&self, local: impl IntoIterator<Item = (VarId, bool)>, dont_care: Vec<VarId>) -> Solution {
        let fixed = self.trail.fixed();
        let assignment = PartialAssignment::from_pairs(fixed.iter().chain(local))
            .expect("leaf values are disjoint from the trail");
        Solution { assignment, dont_care }
    }

    fn brute_force(&self, mode: Mode) -> Vec<Solution> {
        let occ: Vec<VarId> = self.cnf.occurring_vars().into_iter().collect();
        let dont_care: Vec<_> = self.vars.iter().copied().filter(|v| !occ.contains(v)).collect();
        let masks: Vec<(u64, u64)> = self
            .cnf
            .clauses
            .iter()
            .map(|cl| {
                cl.lits().iter().fold((0, 0), |(p, n), l| {
                    let bit = 1u64 << occ.binary_search(&l.var).expect("occurring");
                    if l.positive {
                        (p | bit, n)
                    } else {
                        (p, n | bit)
                    }
                })
            })
            .collect();
        let mut out = Vec::new();
        for x in 0..1u64 << occ.len() {
            if masks.iter().all(|&(p, n)| x & p != 0 || !x & n != 0) {
                let local = occ.iter().enumerate().map(|(j, &v)| (v, x >> j & 1 == 1));
                out.push(self.solution(local, dont_care.clone()));
                if mode == Mode::Decide {
                    break;
                }
            }
        }
        out
    }

    fn children(&self, t: &OnSet) -> Vec<Node> {
        let mut kids = Vec::new();
        for term in t.terms().expect("term chain") {
            let node = Node {
                cnf: self.cnf.clone(),
                vars: self.vars.clone(),
                trail: self.trail.clone(),
            };
            if let Some(k) = node.assign(&term.partial_assignment()) {
                kids.push(k);
            }
        }
        kids
    }
}

impl Subproblem for Node {
    fn step(self, cfg: &SolverConfig) -> Step<Self> {
        if self.cnf.has_empty_clause() {
            return Step::Conflict;
        }
        let Some(node) = self.reduce(cfg.mode) else {
            return Step::Conflict;
        };
        if node.cnf.clauses.is_empty() {
            let free = node.vars.iter().copied().collect();
            return Step::Solutions(vec![node.solution([], free)]);
        }
        if node.cnf.occurring_vars().len() <= cfg.n0 {
            return Step::Solutions(node.brute_force(cfg.mode));
        }
        if cfg.mode == Mode::Enumerate && !find_pure_literals(&node.cnf).is_empty() {
            let t = super::pure_literal_chain(&node.cnf).expect("pure literals exist");
            return Step::Branch(node.children(&t));
        }
        let t = choose_split(&node.cnf, cfg).expect("clauses mention variables");
        let mut kids = node.children(&t);
        if cfg.mode == Mode::Decide {
            // the all-majority term first
            kids.reverse();
        }
        Step::Branch(kids)
    }
}

/// The reductions the solver applies at a node before splitting: units in
/// both modes, pure literals as well in decide mode. Returns the residual set
/// and the values it fixed.
pub fn simplify(c: &CnfSet, mode: Mode) -> std::result::Result<(CnfSet, PartialAssignment), Conflict> {
    if c.has_empty_clause() {
        return Err(Conflict);
    }
    let node = root(c).reduce(mode).ok_or(Conflict)?;
    Ok((node.cnf, node.trail.fixed()))
}

/// Decides or enumerates the satisfying assignments of `c` over all of its
/// variables.
pub fn solve_sat(c: &CnfSet, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let check = |a: &Assignment| c.satisfied_by(a).unwrap_or(false);
    let check: Option<&(dyn Fn(&Assignment) -> bool + Sync)> = if cfg.check_solutions { Some(&check) } else { None };
    solve_roots(vec![root(c)], cfg, check)
}

/// Like [`solve_sat`], but hands each solution to `sink` as it is found.
pub fn solve_sat_streaming(c: &CnfSet, cfg: &SolverConfig, sink: &(dyn Fn(Solution) + Sync)) -> Result<Status> {
    cfg.validate()?;
    let checked = |s: Solution| {
        if cfg.check_solutions {
            assert!(c.satisfied_by(&s.representative()).unwrap_or(false), "emitted solution violates the CNF set");
        }
        sink(s)
    };
    Ok(engine::run(vec![root(c)], cfg, &checked))
}

fn root(c: &CnfSet) -> Node {
    Node {
        vars: c.vars().into_iter().collect(),
        cnf: c.clone(),
        trail: Trail::default(),
    }
}
