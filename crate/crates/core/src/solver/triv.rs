use std::collections::BTreeMap;

use super::{BoolSystem, Equation, TrailEntry};
use crate::boolalg::{BoolFunc, Node, PartialAssignment, Polarity, VarId};

#[derive(Debug, Clone)]
pub enum TrivOutcome {
    /// The reduced system and the values forced on the way.
    Reduced { system: BoolSystem, assigned: PartialAssignment },
    Conflict,
}

enum Fact {
    Drop,
    Conflict,
    Force(Vec<(VarId, bool)>),
    /// `var = target ⊕ negated`.
    Bind { var: VarId, target: VarId, negated: bool },
    Keep,
}

/// Applies the trivial rules to a fixpoint:
/// constant equations are dropped or conflict, a literal equal to a constant
/// is assigned, `l_1 + ... + l_m = 0` and `l_1 ... l_m = 1` assign every
/// literal, and `l_1 = l_2` or `l_1 ⊕ l_2 = c` eliminate the larger variable.
pub fn triv_solve(s: &BoolSystem) -> TrivOutcome {
    let mut sys = s.clone();
    let mut assigned = PartialAssignment::new();
    loop {
        let mut forced: BTreeMap<VarId, bool> = BTreeMap::new();
        let mut bind = None;
        let mut kept = Vec::with_capacity(sys.equations.len());
        for eq in &sys.equations {
            match classify(eq) {
                Fact::Drop => {}
                Fact::Conflict => return TrivOutcome::Conflict,
                Fact::Force(lits) => {
                    for (v, b) in lits {
                        if *forced.entry(v).or_insert(b) != b {
                            return TrivOutcome::Conflict;
                        }
                    }
                }
                Fact::Bind { var, target, negated } => {
                    if bind.is_none() {
                        bind = Some((var, target, negated));
                    }
                    kept.push(eq.clone());
                }
                Fact::Keep => kept.push(eq.clone()),
            }
        }
        sys.equations = kept;
        if !forced.is_empty() {
            let p = PartialAssignment::from_pairs(forced).expect("map keys are distinct");
            for eq in &mut sys.equations {
                *eq = eq.cofactor(&p);
            }
            for (v, b) in p.iter() {
                sys.vars.remove(&v);
                sys.trail = sys.trail.push(TrailEntry::Fixed(v, b));
                assigned.assign(v, b).expect("a variable is forced once");
            }
            continue;
        }
        let Some((var, target, negated)) = bind else {
            break;
        };
        let repl = BoolFunc::literal(target, Polarity::from_value(!negated));
        let sub = |v: VarId| (v == var).then(|| repl.clone());
        for eq in &mut sys.equations {
            *eq = Equation::new(eq.lhs.substitute(&sub), eq.rhs.substitute(&sub));
        }
        sys.vars.remove(&var);
        sys.trail = sys.trail.push(TrailEntry::Bound { var, target, negated });
    }
    TrivOutcome::Reduced { system: sys, assigned }
}

fn classify(eq: &Equation) -> Fact {
    let (lhs, rhs) = match (eq.lhs.as_const(), eq.rhs.as_const()) {
        (Some(a), Some(b)) => return if a == b { Fact::Drop } else { Fact::Conflict },
        (Some(_), None) => (&eq.rhs, &eq.lhs),
        _ => (&eq.lhs, &eq.rhs),
    };
    if let Some(c) = rhs.as_const() {
        if let Some((v, p)) = lhs.as_literal() {
            return Fact::Force(vec![(v, c == p.value())]);
        }
        let target = if c { Target::And } else { Target::Or };
        if let Some(lits) = literal_leaves(lhs, target) {
            // every literal takes the value c
            let mut seen = BTreeMap::new();
            for (v, p) in lits {
                let val = c == p.value();
                if *seen.entry(v).or_insert(val) != val {
                    return Fact::Conflict;
                }
            }
            return Fact::Force(seen.into_iter().collect());
        }
        if let Node::Xor(a, b) = lhs.node() {
            if let (Some(la), Some(lb)) = (a.as_literal(), b.as_literal()) {
                return bind(la, lb, c);
            }
        }
        return Fact::Keep;
    }
    match (lhs.as_literal(), rhs.as_literal()) {
        (Some(la), Some(lb)) => bind(la, lb, false),
        _ => Fact::Keep,
    }
}

/// `la ⊕ lb = c`.
fn bind((a, pa): (VarId, Polarity), (b, pb): (VarId, Polarity), c: bool) -> Fact {
    let neg = |p: Polarity| !p.value();
    let negated = neg(pa) ^ neg(pb) ^ c;
    if a == b {
        return if negated { Fact::Conflict } else { Fact::Drop };
    }
    let (var, target) = if a > b { (a, b) } else { (b, a) };
    Fact::Bind { var, target, negated }
}

#[derive(Clone, Copy)]
enum Target {
    And,
    Or,
}

fn literal_leaves(f: &BoolFunc, target: Target) -> Option<Vec<(VarId, Polarity)>> {
    let mut out = Vec::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        if let Some(l) = g.as_literal() {
            out.push(l);
            continue;
        }
        match (g.node(), target) {
            (Node::And(a, b), Target::And) | (Node::Or(a, b), Target::Or) => {
                stack.push(b);
                stack.push(a);
            }
            _ => return None,
        }
    }
    Some(out)
}
