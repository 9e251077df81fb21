//! Decomposition solver for systems `f_i(X) = g_i(X)`.
//!
//! Each node first applies the trivial reductions of [`triv_solve`]. A node
//! whose remaining equations mention at most `n0` variables is searched
//! exhaustively; otherwise it is split along a chain of ON terms over its most
//! frequent variables ([`choose_split`], [`decompose`]). The solution set of a
//! node is the disjoint union of its children's, each extended by the child's
//! term assignment, so leaves never need to communicate.
//!
//! The system is never folded into a single equation: leaves evaluate every
//! equation separately.

pub mod engine;
mod file;
mod triv;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

pub use file::{parse_system, SystemFile};
pub use triv::{triv_solve, TrivOutcome};

use crate::boolalg::{check_cap, enum_cap, Assignment, BoolFunc, PartialAssignment, Polarity, Program, VarId};
use crate::error::{Error, Result};
use crate::onset::OnSet;
use engine::{Step, Subproblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Stop at the first solution.
    #[default]
    Decide,
    /// Report every solution exactly once.
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Nodes with at most this many live variables are brute-forced.
    pub n0: usize,
    /// Number of variables per splitting chain.
    pub split_depth: usize,
    pub workers: usize,
    pub mode: Mode,
    /// Re-evaluate the root equations on every emitted solution.
    pub check_solutions: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            n0: 16,
            split_depth: 3,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            mode: Mode::Decide,
            check_solutions: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n0 == 0 || self.split_depth == 0 || self.workers == 0 {
            return Err(Error::InvalidConfig("n0, split_depth and workers must be at least 1".into()));
        }
        if self.n0 >= 63 || (1u64 << self.n0) > enum_cap() {
            return Err(Error::InvalidConfig(format!(
                "n0 = {} exceeds the enumeration cap of {}",
                self.n0,
                enum_cap()
            )));
        }
        Ok(())
    }
}

/// A solution cube: fixed values plus variables that may take either value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub assignment: PartialAssignment,
    pub dont_care: Vec<VarId>,
}

impl Solution {
    /// Number of total assignments the cube stands for.
    pub fn count(&self) -> u128 {
        1u128 << self.dont_care.len()
    }

    /// The member with every don't-care set to 0.
    pub fn representative(&self) -> Assignment {
        let mut a: Assignment = self.assignment.clone().into();
        for &v in &self.dont_care {
            a.set(v, false);
        }
        a
    }

    /// Every total assignment in the cube.
    pub fn expand(&self) -> impl Iterator<Item = Assignment> + '_ {
        (0..1u64 << self.dont_care.len()).map(move |i| {
            self.assignment
                .complete(&Assignment::from_index(&self.dont_care, i))
                .expect("don't-cares are disjoint from fixed variables")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    pub solutions: Vec<Solution>,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    /// All solutions with don't-cares expanded.
    pub fn expanded(&self) -> Vec<Assignment> {
        self.solutions.iter().flat_map(|s| s.expand().collect::<Vec<_>>()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: BoolFunc,
    pub rhs: BoolFunc,
}

impl Equation {
    pub fn new(lhs: BoolFunc, rhs: BoolFunc) -> Self {
        Equation { lhs, rhs }
    }

    pub fn holds(&self, a: &Assignment) -> Result<bool> {
        Ok(self.lhs.eval(a)? == self.rhs.eval(a)?)
    }

    fn cofactor(&self, p: &PartialAssignment) -> Equation {
        Equation::new(self.lhs.cofactor(p), self.rhs.cofactor(p))
    }
}

/// One binding recorded while reducing a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrailEntry {
    Fixed(VarId, bool),
    /// `var = target ⊕ negated`.
    Bound { var: VarId, target: VarId, negated: bool },
}

#[derive(Debug)]
struct TrailNode {
    entry: TrailEntry,
    parent: Trail,
}

/// Persistent list of bindings from the root to a node, newest first.
#[derive(Debug, Clone, Default)]
pub struct Trail(Option<Arc<TrailNode>>);

impl Trail {
    pub fn push(&self, entry: TrailEntry) -> Trail {
        Trail(Some(Arc::new(TrailNode {
            entry,
            parent: self.clone(),
        })))
    }

    /// Entries from newest to oldest.
    pub fn iter(&self) -> impl Iterator<Item = TrailEntry> + '_ {
        let mut cur = self.0.as_deref();
        std::iter::from_fn(move || {
            let node = cur?;
            cur = node.parent.0.as_deref();
            Some(node.entry)
        })
    }

    /// The fixed bindings as a partial assignment.
    pub fn fixed(&self) -> PartialAssignment {
        let mut p = PartialAssignment::new();
        for e in self.iter() {
            if let TrailEntry::Fixed(v, b) = e {
                p.assign(v, b).expect("a variable is fixed at most once on a trail");
            }
        }
        p
    }

    /// Completes `local` (values of live variables) with every trailed
    /// variable. Newer entries are resolved first, so each binding's target
    /// is known when it is reached.
    fn resolve(&self, local: &mut BTreeMap<VarId, bool>) {
        let entries: Vec<_> = self.iter().collect();
        for e in entries {
            match e {
                TrailEntry::Fixed(v, b) => {
                    local.insert(v, b);
                }
                TrailEntry::Bound { var, target, negated } => {
                    let t = *local.get(&target).expect("binding target resolved before use");
                    local.insert(var, t ^ negated);
                }
            }
        }
    }
}

/// A system of equations over a shared variable set.
#[derive(Debug, Clone)]
pub struct BoolSystem {
    equations: Vec<Equation>,
    vars: BTreeSet<VarId>,
    trail: Trail,
}

impl BoolSystem {
    /// The variable set is the union of the equations' variables and `extra`.
    pub fn new(equations: Vec<Equation>, extra: impl IntoIterator<Item = VarId>) -> Self {
        let mut vars: BTreeSet<VarId> = extra.into_iter().collect();
        for eq in &equations {
            vars.extend(eq.lhs.vars());
            vars.extend(eq.rhs.vars());
        }
        BoolSystem {
            equations,
            vars,
            trail: Trail::default(),
        }
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Unassigned variables of this node.
    pub fn vars(&self) -> &BTreeSet<VarId> {
        &self.vars
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    /// Whether `a` satisfies every equation.
    pub fn satisfied_by(&self, a: &Assignment) -> Result<bool> {
        for eq in &self.equations {
            if !eq.holds(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Variables mentioned by the remaining equations.
    pub fn occurring_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for eq in &self.equations {
            out.extend(eq.lhs.vars());
            out.extend(eq.rhs.vars());
        }
        out
    }

    /// Occurrence counts over all equations.
    pub fn occurrences(&self) -> HashMap<VarId, usize> {
        let mut counts = HashMap::new();
        for eq in &self.equations {
            eq.lhs.occurrences(&mut counts);
            eq.rhs.occurrences(&mut counts);
        }
        counts
    }

    /// Live variables that earlier literal bindings depend on but that no
    /// longer occur; they must be enumerated, not reported as don't-cares.
    fn linked_vars(&self, occurring: &BTreeSet<VarId>) -> Vec<VarId> {
        let mut out: BTreeSet<VarId> = BTreeSet::new();
        for e in self.trail.iter() {
            if let TrailEntry::Bound { target, .. } = e {
                if self.vars.contains(&target) && !occurring.contains(&target) {
                    out.insert(target);
                }
            }
        }
        out.into_iter().collect()
    }

    fn with_parts(equations: Vec<Equation>, vars: BTreeSet<VarId>, trail: Trail) -> Self {
        BoolSystem { equations, vars, trail }
    }
}

/// Term chain over the `split_depth` most frequent variables (ties to the
/// lower id), all literals positive.
pub fn choose_split(s: &BoolSystem, cfg: &SolverConfig) -> Result<OnSet> {
    let counts = s.occurrences();
    let picked = top_by_frequency(&counts, cfg.split_depth);
    let lits: Vec<_> = picked.into_iter().map(|v| (v, Polarity::Positive)).collect();
    OnSet::term_chain(&lits)
}

pub(crate) fn top_by_frequency(counts: &HashMap<VarId, usize>, k: usize) -> Vec<VarId> {
    let mut ranked: Vec<_> = counts.iter().map(|(&v, &c)| (v, c)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.into_iter().take(k).map(|(v, _)| v).collect()
}

/// One subsystem per term: equations cofactored by `q(t_k)`, the term's
/// variables removed, and the trail extended.
pub fn decompose(s: &BoolSystem, t: &OnSet) -> Result<Vec<BoolSystem>> {
    let terms = t
        .terms()
        .ok_or_else(|| Error::InvalidConfig("decomposition requires an ON set of terms".into()))?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let q = term.partial_assignment();
        if let Some(v) = q.vars().find(|v| !s.vars.contains(v)) {
            return Err(Error::VariableAbsent(v));
        }
        let equations = s.equations.iter().map(|eq| eq.cofactor(&q)).collect();
        let vars = s.vars.iter().copied().filter(|v| !q.contains(*v)).collect();
        let trail = q.iter().fold(s.trail.clone(), |tr, (v, b)| tr.push(TrailEntry::Fixed(v, b)));
        out.push(BoolSystem::with_parts(equations, vars, trail));
    }
    Ok(out)
}

/// Exhaustive search over the variables the equations mention. Variables
/// that occur nowhere are reported as don't-cares.
pub fn brute_force(s: &BoolSystem, mode: Mode) -> Result<SolveOutcome> {
    let occurring: Vec<_> = s.occurring_vars().into_iter().collect();
    check_cap(occurring.len())?;
    let solutions = leaf_solutions(s, &occurring, mode)?;
    Ok(SolveOutcome {
        status: if solutions.is_empty() { Status::Unsat } else { Status::Sat },
        solutions,
    })
}

fn leaf_solutions(s: &BoolSystem, occurring: &[VarId], mode: Mode) -> Result<Vec<Solution>> {
    let linked = s.linked_vars(&occurring.iter().copied().collect());
    let dont_care: Vec<_> = s
        .vars
        .iter()
        .copied()
        .filter(|v| !occurring.contains(v) && !linked.contains(v))
        .collect();
    let funcs: Vec<_> = s
        .equations
        .iter()
        .flat_map(|eq| [eq.lhs.clone(), eq.rhs.clone()])
        .collect();
    let prog = Program::compile(&funcs, occurring)?;
    let mut regs = Vec::new();
    let mut out = Vec::new();
    let valid = prog.valid_mask();
    for w in 0..prog.words() {
        prog.eval_word(w, &mut regs);
        let mut ok = valid;
        for k in 0..s.equations.len() {
            ok &= !(prog.output(&regs, 2 * k) ^ prog.output(&regs, 2 * k + 1));
            if ok == 0 {
                break;
            }
        }
        while ok != 0 {
            let bit = ok.trailing_zeros() as u64;
            ok &= ok - 1;
            let point = Assignment::from_index(occurring, ((w as u64) << 6) | bit);
            let linked_choices = match mode {
                Mode::Decide => 1,
                Mode::Enumerate => 1u64 << linked.len(),
            };
            for l in 0..linked_choices {
                let mut local: BTreeMap<VarId, bool> = point.iter().collect();
                local.extend(Assignment::from_index(&linked, l).iter());
                s.trail.resolve(&mut local);
                out.push(Solution {
                    assignment: PartialAssignment::from_pairs(local).expect("map keys are distinct"),
                    dont_care: dont_care.clone(),
                });
                if mode == Mode::Decide {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

impl Subproblem for BoolSystem {
    fn step(self, cfg: &SolverConfig) -> Step<Self> {
        let s = match triv_solve(&self) {
            TrivOutcome::Conflict => return Step::Conflict,
            TrivOutcome::Reduced { system, .. } => system,
        };
        let occurring: Vec<_> = s.occurring_vars().into_iter().collect();
        if occurring.len() <= cfg.n0 {
            return Step::Solutions(leaf_solutions(&s, &occurring, cfg.mode).expect("leaf within n0"));
        }
        let t = choose_split(&s, cfg).expect("a node above n0 has occurring variables");
        Step::Branch(decompose(&s, &t).expect("split variables are live"))
    }
}

/// Runs the engine from several roots, collecting solutions. When `check` is
/// given, each emitted cube's representative is re-evaluated against it.
pub(crate) fn solve_roots<P: Subproblem>(
    roots: Vec<P>,
    cfg: &SolverConfig,
    check: Option<&(dyn Fn(&Assignment) -> bool + Sync)>,
) -> Result<SolveOutcome> {
    cfg.validate()?;
    let found = Mutex::new(Vec::new());
    let sink = |s: Solution| {
        if let Some(check) = check {
            assert!(check(&s.representative()), "emitted solution violates the root system");
        }
        found.lock().unwrap().push(s);
    };
    let status = engine::run(roots, cfg, &sink);
    Ok(SolveOutcome {
        status,
        solutions: found.into_inner().unwrap(),
    })
}

/// Decides or enumerates the solutions of `s`, reported over all of its
/// variables (trail, leaf values and don't-cares).
pub fn bool_solve(s: &BoolSystem, cfg: &SolverConfig) -> Result<SolveOutcome> {
    bool_solve_from(s, vec![s.clone()], cfg)
}

/// Solves the given subsystems of `parent`, e.g. the output of
/// [`decompose`] with a caller-chosen first split.
pub fn bool_solve_from(parent: &BoolSystem, roots: Vec<BoolSystem>, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let check = |a: &Assignment| parent.satisfied_by(a).unwrap_or(false);
    let check: Option<&(dyn Fn(&Assignment) -> bool + Sync)> = if cfg.check_solutions { Some(&check) } else { None };
    solve_roots(roots, cfg, check)
}
