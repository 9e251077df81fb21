use std::collections::BTreeMap;
use std::fmt;

use super::{BoolFunc, PartialAssignment, VarId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn from_value(value: bool) -> Self {
        if value {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    /// The value a variable takes when this literal is true.
    pub fn value(self) -> bool {
        self == Polarity::Positive
    }

    pub fn flip(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

/// A product of literals over distinct variables. The empty term is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    literals: BTreeMap<VarId, Polarity>,
}

impl Term {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = (VarId, Polarity)>>(literals: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, p) in literals {
            if map.insert(v, p).is_some() {
                return Err(Error::DuplicateVariable(v));
            }
        }
        Ok(Term { literals: map })
    }

    pub fn literal(v: VarId, p: Polarity) -> Self {
        Term {
            literals: BTreeMap::from([(v, p)]),
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = (VarId, Polarity)> + '_ {
        self.literals.iter().map(|(&v, &p)| (v, p))
    }

    pub fn polarity(&self, v: VarId) -> Option<Polarity> {
        self.literals.get(&v).copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.literals.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// `q(t)`: the unique bindings forced by `t = 1`.
    pub fn partial_assignment(&self) -> PartialAssignment {
        PartialAssignment::from_pairs(self.literals().map(|(v, p)| (v, p.value())))
            .expect("term variables are distinct")
    }

    pub fn to_func(&self) -> BoolFunc {
        BoolFunc::and_all(self.literals().map(|(v, p)| BoolFunc::literal(v, p)))
    }

    /// Product of two terms, or `None` when they contain opposite literals.
    pub fn product(&self, other: &Term) -> Option<Term> {
        let mut out = self.literals.clone();
        for (v, p) in other.literals() {
            match out.insert(v, p) {
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(Term { literals: out })
    }

    /// The term with every literal complemented, `t(X*)`.
    pub fn conjugate(&self) -> Term {
        Term {
            literals: self.literals().map(|(v, p)| (v, p.flip())).collect(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, p)) in self.literals().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            match p {
                Polarity::Positive => write!(f, "{v}")?,
                Polarity::Negative => write!(f, "~{v}")?,
            }
        }
        Ok(())
    }
}
