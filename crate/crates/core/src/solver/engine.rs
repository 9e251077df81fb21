//! Tree scheduler shared by the general and CNF drivers.
//!
//! Subproblems are independent values; a node either conflicts, yields leaf
//! solutions, or branches. With one worker the tree is walked depth-first in
//! child order. With more, nodes are spawned onto a work-stealing pool and the
//! only shared state is the output sink and, in decide mode, a stop flag.

use std::sync::atomic::{AtomicBool, Ordering};

use super::{Mode, Solution, SolverConfig, Status};

pub enum Step<P> {
    Conflict,
    Solutions(Vec<Solution>),
    Branch(Vec<P>),
}

pub trait Subproblem: Send + Sized {
    fn step(self, cfg: &SolverConfig) -> Step<Self>;
}

struct Ctx<'a> {
    cfg: &'a SolverConfig,
    sink: &'a (dyn Fn(Solution) + Sync),
    sat: AtomicBool,
    stop: AtomicBool,
}

impl Ctx<'_> {
    fn emit(&self, solutions: Vec<Solution>) {
        for s in solutions {
            match self.cfg.mode {
                Mode::Decide => {
                    if self
                        .stop
                        .compare_exchange(false, true, Ordering::AcqRel, Ordering::Acquire)
                        .is_ok()
                    {
                        self.sat.store(true, Ordering::Release);
                        (self.sink)(s);
                    }
                    return;
                }
                Mode::Enumerate => {
                    self.sat.store(true, Ordering::Release);
                    (self.sink)(s);
                }
            }
        }
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Acquire)
    }
}

/// Solves every root, streaming solutions into `sink`. In decide mode at most
/// one solution reaches the sink.
pub fn run<P: Subproblem>(roots: Vec<P>, cfg: &SolverConfig, sink: &(dyn Fn(Solution) + Sync)) -> Status {
    let ctx = Ctx {
        cfg,
        sink,
        sat: AtomicBool::new(false),
        stop: AtomicBool::new(false),
    };
    if cfg.workers <= 1 {
        run_sequential(roots, &ctx);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .expect("failed to build worker pool");
        let ctx = &ctx;
        pool.scope(|scope| {
            for root in roots {
                scope.spawn(move |s| process(s, root, ctx));
            }
        });
    }
    if ctx.sat.load(Ordering::Acquire) {
        Status::Sat
    } else {
        Status::Unsat
    }
}

fn run_sequential<P: Subproblem>(roots: Vec<P>, ctx: &Ctx<'_>) {
    let mut stack: Vec<P> = roots.into_iter().rev().collect();
    while let Some(node) = stack.pop() {
        if ctx.stopped() {
            return;
        }
        match node.step(ctx.cfg) {
            Step::Conflict => {}
            Step::Solutions(s) => ctx.emit(s),
            Step::Branch(children) => stack.extend(children.into_iter().rev()),
        }
    }
}

fn process<'s, P: Subproblem + 's>(scope: &rayon::Scope<'s>, node: P, ctx: &'s Ctx<'s>) {
    if ctx.stopped() {
        return;
    }
    match node.step(ctx.cfg) {
        Step::Conflict => {}
        Step::Solutions(s) => ctx.emit(s),
        Step::Branch(children) => {
            for child in children {
                scope.spawn(move |s| process(s, child, ctx));
            }
        }
    }
}
