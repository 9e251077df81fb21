//! Boolean functions over `B0 = {0,1}`: representation, evaluation, zero
//! sets, duality and cofactors.
//!
//! Functions are immutable expression DAGs with structural sharing.
//! Constructors fold constants eagerly, so a function that is syntactically
//! constant after substitution is always a `Const` node. No canonical form is
//! kept; semantic questions go through [`TruthTable`].

mod assign;
mod parse;
mod table;
mod term;

use std::collections::{BTreeSet, HashMap};

use rustc_hash::{FxHashMap, FxHashSet};
use std::fmt;
use std::sync::Arc;

pub use assign::{Assignment, PartialAssignment};
pub(crate) use parse::parse_expr_at;
pub use parse::{parse_expr, Symbols};
pub(crate) use table::check_cap;
pub use table::{enum_cap, set_enum_cap, Program, TruthTable, DEFAULT_ENUM_CAP};
pub use term::{Polarity, Term};

use crate::error::{Error, Result};

/// Index of a variable `x_i` within one problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug)]
pub enum Node {
    Const(bool),
    Var(VarId),
    Not(BoolFunc),
    And(BoolFunc, BoolFunc),
    Or(BoolFunc, BoolFunc),
    Xor(BoolFunc, BoolFunc),
}

/// A Boolean function over named variables.
#[derive(Clone)]
pub struct BoolFunc(Arc<Node>);

impl BoolFunc {
    fn from_node(node: Node) -> Self {
        BoolFunc(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &BoolFunc) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn constant(value: bool) -> Self {
        BoolFunc::from_node(Node::Const(value))
    }

    pub fn zero() -> Self {
        Self::constant(false)
    }

    pub fn one() -> Self {
        Self::constant(true)
    }

    pub fn var(v: VarId) -> Self {
        BoolFunc::from_node(Node::Var(v))
    }

    pub fn literal(v: VarId, p: Polarity) -> Self {
        match p {
            Polarity::Positive => Self::var(v),
            Polarity::Negative => Self::var(v).not(),
        }
    }

    pub fn as_const(&self) -> Option<bool> {
        match *self.0 {
            Node::Const(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_const(&self) -> bool {
        self.as_const().is_some()
    }

    /// `Some((v, polarity))` when the function is `x_v` or `x_v'`.
    pub fn as_literal(&self) -> Option<(VarId, Polarity)> {
        match &*self.0 {
            Node::Var(v) => Some((*v, Polarity::Positive)),
            Node::Not(inner) => match *inner.0 {
                Node::Var(v) => Some((v, Polarity::Negative)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn not(&self) -> BoolFunc {
        match &*self.0 {
            Node::Const(b) => BoolFunc::constant(!b),
            Node::Not(inner) => inner.clone(),
            _ => BoolFunc::from_node(Node::Not(self.clone())),
        }
    }

    pub fn and(&self, other: &BoolFunc) -> BoolFunc {
        match (self.as_const(), other.as_const()) {
            (Some(false), _) | (_, Some(false)) => return BoolFunc::zero(),
            (Some(true), _) => return other.clone(),
            (_, Some(true)) => return self.clone(),
            _ => {}
        }
        match Self::literal_relation(self, other) {
            Some(true) => self.clone(),
            Some(false) => BoolFunc::zero(),
            None => BoolFunc::from_node(Node::And(self.clone(), other.clone())),
        }
    }

    pub fn or(&self, other: &BoolFunc) -> BoolFunc {
        match (self.as_const(), other.as_const()) {
            (Some(true), _) | (_, Some(true)) => return BoolFunc::one(),
            (Some(false), _) => return other.clone(),
            (_, Some(false)) => return self.clone(),
            _ => {}
        }
        match Self::literal_relation(self, other) {
            Some(true) => self.clone(),
            Some(false) => BoolFunc::one(),
            None => BoolFunc::from_node(Node::Or(self.clone(), other.clone())),
        }
    }

    pub fn xor(&self, other: &BoolFunc) -> BoolFunc {
        match (self.as_const(), other.as_const()) {
            (Some(a), Some(b)) => return BoolFunc::constant(a ^ b),
            (Some(false), _) => return other.clone(),
            (_, Some(false)) => return self.clone(),
            (Some(true), _) => return other.not(),
            (_, Some(true)) => return self.not(),
            _ => {}
        }
        match Self::literal_relation(self, other) {
            Some(true) => BoolFunc::zero(),
            Some(false) => BoolFunc::one(),
            None => BoolFunc::from_node(Node::Xor(self.clone(), other.clone())),
        }
    }

    /// `Some(true)` if the two are the same node or the same literal,
    /// `Some(false)` if they are complementary, `None` otherwise.
    fn literal_relation(a: &BoolFunc, b: &BoolFunc) -> Option<bool> {
        if a.ptr_eq(b) {
            return Some(true);
        }
        match (a.as_literal(), b.as_literal()) {
            (Some((va, pa)), Some((vb, pb))) if va == vb => Some(pa == pb),
            _ => {
                if let Node::Not(inner) = &*a.0 {
                    if inner.ptr_eq(b) {
                        return Some(false);
                    }
                }
                if let Node::Not(inner) = &*b.0 {
                    if inner.ptr_eq(a) {
                        return Some(false);
                    }
                }
                None
            }
        }
    }

    /// Balanced conjunction; the empty product is 1.
    pub fn and_all<I: IntoIterator<Item = BoolFunc>>(items: I) -> BoolFunc {
        let items: Vec<_> = items.into_iter().collect();
        Self::balanced(&items, true)
    }

    /// Balanced disjunction; the empty sum is 0.
    pub fn or_all<I: IntoIterator<Item = BoolFunc>>(items: I) -> BoolFunc {
        let items: Vec<_> = items.into_iter().collect();
        Self::balanced(&items, false)
    }

    fn balanced(items: &[BoolFunc], conj: bool) -> BoolFunc {
        match items.len() {
            0 => BoolFunc::constant(conj),
            1 => items[0].clone(),
            n => {
                let (l, r) = items.split_at(n / 2);
                let (l, r) = (Self::balanced(l, conj), Self::balanced(r, conj));
                if conj {
                    l.and(&r)
                } else {
                    l.or(&r)
                }
            }
        }
    }

    /// Value of the function at `a`.
    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        self.eval_with(&|v| a.get(v).ok()).map_err(Error::UndeclaredVariable)
    }

    /// Evaluation with an arbitrary variable lookup; the error names the first
    /// unresolved variable.
    pub fn eval_with(&self, lookup: &dyn Fn(VarId) -> Option<bool>) -> std::result::Result<bool, VarId> {
        Ok(match &*self.0 {
            Node::Const(b) => *b,
            Node::Var(v) => lookup(*v).ok_or(*v)?,
            Node::Not(a) => !a.eval_with(lookup)?,
            Node::And(a, b) => a.eval_with(lookup)? & b.eval_with(lookup)?,
            Node::Or(a, b) => a.eval_with(lookup)? | b.eval_with(lookup)?,
            Node::Xor(a, b) => a.eval_with(lookup)? ^ b.eval_with(lookup)?,
        })
    }

    fn for_each_unique(&self, visit: &mut dyn FnMut(&BoolFunc)) {
        let mut seen = FxHashSet::default();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.key()) {
                continue;
            }
            visit(f);
            match &*f.0 {
                Node::Const(_) | Node::Var(_) => {}
                Node::Not(a) => stack.push(a),
                Node::And(a, b) | Node::Or(a, b) | Node::Xor(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
    }

    /// Variables referenced by the expression.
    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.for_each_unique(&mut |f| {
            if let Node::Var(v) = f.node() {
                out.insert(*v);
            }
        });
        out
    }

    /// Number of references to each variable across distinct DAG nodes.
    pub fn occurrences(&self, counts: &mut HashMap<VarId, usize>) {
        self.for_each_unique(&mut |f| {
            let children: &[&BoolFunc] = match f.node() {
                Node::Const(_) => &[],
                Node::Var(v) => {
                    // a bare variable at the root counts once
                    if f.ptr_eq(self) {
                        *counts.entry(*v).or_default() += 1;
                    }
                    &[]
                }
                Node::Not(a) => &[a],
                Node::And(a, b) | Node::Or(a, b) | Node::Xor(a, b) => &[a, b][..],
            };
            for c in children {
                if let Node::Var(v) = c.node() {
                    *counts.entry(*v).or_default() += 1;
                }
            }
        });
    }

    /// Number of distinct DAG nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.for_each_unique(&mut |_| n += 1);
        n
    }

    /// Replaces variables for which `leaf` returns a function, folding
    /// constants on the way back up. Untouched subgraphs are shared.
    pub fn substitute(&self, leaf: &dyn Fn(VarId) -> Option<BoolFunc>) -> BoolFunc {
        let mut memo = FxHashMap::default();
        self.substitute_memo(leaf, &mut memo)
    }

    fn substitute_memo(
        &self,
        leaf: &dyn Fn(VarId) -> Option<BoolFunc>,
        memo: &mut FxHashMap<usize, BoolFunc>,
    ) -> BoolFunc {
        if let Some(done) = memo.get(&self.key()) {
            return done.clone();
        }
        let out = match &*self.0 {
            Node::Const(_) => self.clone(),
            Node::Var(v) => leaf(*v).unwrap_or_else(|| self.clone()),
            Node::Not(a) => {
                let na = a.substitute_memo(leaf, memo);
                if na.ptr_eq(a) {
                    self.clone()
                } else {
                    na.not()
                }
            }
            Node::And(a, b) | Node::Or(a, b) | Node::Xor(a, b) => {
                let na = a.substitute_memo(leaf, memo);
                let nb = b.substitute_memo(leaf, memo);
                if na.ptr_eq(a) && nb.ptr_eq(b) {
                    self.clone()
                } else {
                    match &*self.0 {
                        Node::And(..) => na.and(&nb),
                        Node::Or(..) => na.or(&nb),
                        _ => na.xor(&nb),
                    }
                }
            }
        };
        memo.insert(self.key(), out.clone());
        out
    }

    /// `f/p`: substitutes the bindings of `p` and constant-folds.
    pub fn cofactor(&self, p: &PartialAssignment) -> BoolFunc {
        if p.is_empty() {
            return self.clone();
        }
        self.substitute(&|v| p.get(v).map(BoolFunc::constant))
    }

    /// Ratio `f/t` for a term.
    pub fn ratio(&self, t: &Term) -> BoolFunc {
        self.cofactor(&t.partial_assignment())
    }

    /// Composition `f(g_1, ..., g_n)` for the listed variables.
    pub fn compose(&self, bindings: &HashMap<VarId, BoolFunc>) -> BoolFunc {
        self.substitute(&|v| bindings.get(&v).cloned())
    }

    /// `f(X*)`: every variable complemented.
    pub fn conjugate(&self) -> BoolFunc {
        self.substitute(&|v| Some(BoolFunc::var(v).not()))
    }

    /// `f^d(X) = f(X*)'`.
    pub fn dual(&self) -> BoolFunc {
        self.conjugate().not()
    }

    /// `f(1, Y) f(0, Y)`, whose zeros project `V(f)` along `x`.
    pub fn eliminant(&self, x: VarId) -> Result<BoolFunc> {
        if !self.vars().contains(&x) {
            return Err(Error::VariableAbsent(x));
        }
        let hi = self.substitute(&|v| (v == x).then(BoolFunc::one));
        let lo = self.substitute(&|v| (v == x).then(BoolFunc::zero));
        Ok(hi.and(&lo))
    }

    /// `f_a = Σ (x_i ⊕ a_i)`, whose only zero is `a`.
    pub fn point_function(a: &Assignment) -> BoolFunc {
        BoolFunc::or_all(
            a.iter()
                .map(|(v, b)| BoolFunc::var(v).xor(&BoolFunc::constant(b))),
        )
    }

    pub fn truth_table(&self, vars: &[VarId]) -> Result<TruthTable> {
        TruthTable::of(self, vars)
    }

    /// `V(f)` over the function's own variables (ascending).
    pub fn zero_set(&self) -> Result<Vec<Assignment>> {
        let vars: Vec<_> = self.vars().into_iter().collect();
        self.zero_set_over(&vars)
    }

    pub fn zero_set_over(&self, vars: &[VarId]) -> Result<Vec<Assignment>> {
        let t = self.truth_table(vars)?.not();
        Ok(t.ones().map(|i| Assignment::from_index(vars, i)).collect())
    }

    /// `supp f` over the given variables.
    pub fn support_over(&self, vars: &[VarId]) -> Result<Vec<Assignment>> {
        let t = self.truth_table(vars)?;
        Ok(t.ones().map(|i| Assignment::from_index(vars, i)).collect())
    }

    /// First zero in index order over `vars`, if any.
    pub fn find_zero(&self, vars: &[VarId]) -> Result<Option<Assignment>> {
        let t = self.truth_table(vars)?.not();
        let first = t.ones().next();
        Ok(first.map(|i| Assignment::from_index(vars, i)))
    }

    /// Semantic equality over the union of both variable sets.
    pub fn equivalent(&self, other: &BoolFunc) -> Result<bool> {
        let vars: Vec<_> = self.vars().union(&other.vars()).copied().collect();
        Ok(self.truth_table(&vars)? == other.truth_table(&vars)?)
    }

    /// `f ≤ g` pointwise.
    pub fn leq(&self, other: &BoolFunc) -> Result<bool> {
        self.and(&other.not()).is_unsat()
    }

    /// `true` when the function is identically 0.
    pub fn is_unsat(&self) -> Result<bool> {
        if let Some(b) = self.as_const() {
            return Ok(!b);
        }
        let vars: Vec<_> = self.vars().into_iter().collect();
        Ok(self.truth_table(&vars)?.is_zero())
    }

    /// Renders in the text grammar accepted by [`parse_expr`].
    pub fn render_with(&self, names: &dyn Fn(VarId) -> String) -> String {
        let mut s = String::new();
        self.render(&mut s, names, 0);
        s
    }

    fn render(&self, out: &mut String, names: &dyn Fn(VarId) -> String, parent: u8) {
        // precedence: | 1, ^ 2, & 3, ~ 4
        let (prec, op) = match &*self.0 {
            Node::Const(b) => {
                out.push(if *b { '1' } else { '0' });
                return;
            }
            Node::Var(v) => {
                out.push_str(&names(*v));
                return;
            }
            Node::Not(a) => {
                out.push('~');
                a.render(out, names, 4);
                return;
            }
            Node::Or(..) => (1, " | "),
            Node::Xor(..) => (2, " ^ "),
            Node::And(..) => (3, " & "),
        };
        let (a, b) = match &*self.0 {
            Node::And(a, b) | Node::Or(a, b) | Node::Xor(a, b) => (a, b),
            _ => unreachable!(),
        };
        let paren = prec < parent;
        if paren {
            out.push('(');
        }
        a.render(out, names, prec);
        out.push_str(op);
        // right operand binds one level tighter so chains stay left-associative
        b.render(out, names, prec + 1);
        if paren {
            out.push(')');
        }
    }
}

impl fmt::Display for BoolFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&|v| v.to_string()))
    }
}

impl fmt::Debug for BoolFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolFunc({self})")
    }
}

impl PartialEq for BoolFunc {
    /// Structural equality; use [`BoolFunc::equivalent`] for semantics.
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Node::Const(a), Node::Const(b)) => a == b,
            (Node::Var(a), Node::Var(b)) => a == b,
            (Node::Not(a), Node::Not(b)) => a == b,
            (Node::And(a1, b1), Node::And(a2, b2))
            | (Node::Or(a1, b1), Node::Or(a2, b2))
            | (Node::Xor(a1, b1), Node::Xor(a2, b2)) => a1 == a2 && b1 == b2,
            _ => false,
        }
    }
}

impl Eq for BoolFunc {}

macro_rules! binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl std::ops::$trait<&BoolFunc> for &BoolFunc {
            type Output = BoolFunc;
            fn $method(self, rhs: &BoolFunc) -> BoolFunc {
                self.$call(rhs)
            }
        }
        impl std::ops::$trait for BoolFunc {
            type Output = BoolFunc;
            fn $method(self, rhs: BoolFunc) -> BoolFunc {
                BoolFunc::$call(&self, &rhs)
            }
        }
    };
}

binop!(BitAnd, bitand, and);
binop!(BitOr, bitor, or);
binop!(BitXor, bitxor, xor);

impl std::ops::Not for &BoolFunc {
    type Output = BoolFunc;
    fn not(self) -> BoolFunc {
        BoolFunc::not(self)
    }
}

impl std::ops::Not for BoolFunc {
    type Output = BoolFunc;
    fn not(self) -> BoolFunc {
        BoolFunc::not(&self)
    }
}
