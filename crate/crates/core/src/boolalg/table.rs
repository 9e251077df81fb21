use rustc_hash::FxHashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::{BoolFunc, Node, VarId};
use crate::error::{Error, Result};

/// Hard cap on exhaustive evaluations (points per table).
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

static ENUM_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ENUM_CAP);

pub fn enum_cap() -> u64 {
    ENUM_CAP.load(Ordering::Relaxed)
}

/// Changes the process-wide enumeration cap.
pub fn set_enum_cap(cap: u64) {
    ENUM_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_cap(nvars: usize) -> Result<()> {
    let cap = enum_cap();
    if nvars >= 64 || (1u64 << nvars) > cap {
        return Err(Error::TooManyVariables { vars: nvars, cap });
    }
    Ok(())
}

const LOW_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Debug, Clone, Copy)]
enum Op {
    Const(bool),
    Var(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Xor(usize, usize),
}

/// A straight-line program evaluating several functions over 64 points at a
/// time. Point index `i` assigns variable `j` the bit `n-1-j` of `i`.
#[derive(Debug, Clone)]
pub struct Program {
    nvars: usize,
    ops: Vec<Op>,
    outputs: Vec<usize>,
}

impl Program {
    /// Compiles `funcs` over the ordered variable list. Every variable of
    /// every function must be listed.
    pub fn compile(funcs: &[BoolFunc], vars: &[VarId]) -> Result<Program> {
        let index: FxHashMap<VarId, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut slots = FxHashMap::default();
        let mut ops = Vec::new();
        let mut outputs = Vec::with_capacity(funcs.len());
        for f in funcs {
            outputs.push(Self::emit(f, &index, &mut slots, &mut ops)?);
        }
        Ok(Program {
            nvars: vars.len(),
            ops,
            outputs,
        })
    }

    fn emit(
        root: &BoolFunc,
        index: &FxHashMap<VarId, usize>,
        slots: &mut FxHashMap<usize, usize>,
        ops: &mut Vec<Op>,
    ) -> Result<usize> {
        // iterative post-order so deep chains don't overflow the stack
        let mut stack = vec![(root, false)];
        while let Some((f, expanded)) = stack.pop() {
            if slots.contains_key(&f.key()) {
                continue;
            }
            let children: &[&BoolFunc] = match f.node() {
                Node::Const(_) | Node::Var(_) => &[],
                Node::Not(a) => &[a],
                Node::And(a, b) | Node::Or(a, b) | Node::Xor(a, b) => &[a, b][..],
            };
            if !expanded && !children.is_empty() {
                stack.push((f, true));
                for &c in children {
                    stack.push((c, false));
                }
                continue;
            }
            let slot = |c: &BoolFunc| slots[&c.key()];
            let op = match f.node() {
                Node::Const(b) => Op::Const(*b),
                Node::Var(v) => Op::Var(*index.get(v).ok_or(Error::UndeclaredVariable(*v))?),
                Node::Not(a) => Op::Not(slot(a)),
                Node::And(a, b) => Op::And(slot(a), slot(b)),
                Node::Or(a, b) => Op::Or(slot(a), slot(b)),
                Node::Xor(a, b) => Op::Xor(slot(a), slot(b)),
            };
            ops.push(op);
            slots.insert(f.key(), ops.len() - 1);
        }
        Ok(slots[&root.key()])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Number of 64-point words covering all `2^n` points.
    pub fn words(&self) -> usize {
        if self.nvars <= 6 {
            1
        } else {
            1 << (self.nvars - 6)
        }
    }

    /// Mask of valid points in a word.
    pub fn valid_mask(&self) -> u64 {
        if self.nvars >= 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << self.nvars)) - 1
        }
    }

    /// Evaluates word `w` into `regs`; read outputs with [`Program::output`].
    pub fn eval_word(&self, w: usize, regs: &mut Vec<u64>) {
        regs.clear();
        let n = self.nvars;
        for op in &self.ops {
            let val = match *op {
                Op::Const(b) => {
                    if b {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Op::Var(j) => {
                    let bit = n - 1 - j;
                    if bit < 6 {
                        LOW_MASKS[bit]
                    } else if (w >> (bit - 6)) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Op::Not(a) => !regs[a],
                Op::And(a, b) => regs[a] & regs[b],
                Op::Or(a, b) => regs[a] | regs[b],
                Op::Xor(a, b) => regs[a] ^ regs[b],
            };
            regs.push(val);
        }
    }

    pub fn output(&self, regs: &[u64], k: usize) -> u64 {
        regs[self.outputs[k]]
    }
}

/// The full value table of a function over an ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    nvars: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn of(f: &BoolFunc, vars: &[VarId]) -> Result<TruthTable> {
        check_cap(vars.len())?;
        let prog = Program::compile(std::slice::from_ref(f), vars)?;
        let mask = prog.valid_mask();
        let mut regs = Vec::new();
        let words = (0..prog.words())
            .map(|w| {
                prog.eval_word(w, &mut regs);
                prog.output(&regs, 0) & mask
            })
            .collect();
        Ok(TruthTable {
            nvars: vars.len(),
            words,
        })
    }

    pub fn constant(nvars: usize, value: bool) -> TruthTable {
        let words = if nvars <= 6 { 1 } else { 1 << (nvars - 6) };
        let t = TruthTable {
            nvars,
            words: vec![if value { u64::MAX } else { 0 }; words],
        };
        t.masked()
    }

    fn mask(&self) -> u64 {
        if self.nvars >= 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << self.nvars)) - 1
        }
    }

    fn masked(mut self) -> Self {
        let m = self.mask();
        for w in &mut self.words {
            *w &= m;
        }
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, index: u64) -> bool {
        (self.words[(index >> 6) as usize] >> (index & 63)) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == TruthTable::constant(self.nvars, true)
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Point indices where the table is 1, ascending.
    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(((wi as u64) << 6) | b)
            })
        })
    }

    pub fn not(&self) -> TruthTable {
        TruthTable {
            nvars: self.nvars,
            words: self.words.iter().map(|w| !w).collect(),
        }
        .masked()
    }

    fn zip(&self, other: &TruthTable, op: impl Fn(u64, u64) -> u64) -> TruthTable {
        assert_eq!(self.nvars, other.nvars, "tables over different variable counts");
        TruthTable {
            nvars: self.nvars,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn and(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a ^ b)
    }

    /// `self ≤ other` pointwise.
    pub fn leq(&self, other: &TruthTable) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }
}
