use std::collections::BTreeMap;
use std::fmt;

use super::VarId;
use crate::error::{Error, Result};

/// A total assignment of `{0,1}` values over a declared set of variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: BTreeMap<VarId, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Decodes a point index over `vars`; the first variable is the most
    /// significant bit.
    pub fn from_index(vars: &[VarId], index: u64) -> Self {
        let n = vars.len();
        let values = vars
            .iter()
            .enumerate()
            .map(|(j, &v)| (v, (index >> (n - 1 - j)) & 1 == 1))
            .collect();
        Assignment { values }
    }

    /// Inverse of [`Assignment::from_index`]. Variables not declared here read as 0.
    pub fn to_index(&self, vars: &[VarId]) -> u64 {
        vars.iter()
            .fold(0u64, |acc, v| (acc << 1) | u64::from(self.values.get(v).copied().unwrap_or(false)))
    }

    pub fn get(&self, v: VarId) -> Result<bool> {
        self.values.get(&v).copied().ok_or(Error::UndeclaredVariable(v))
    }

    pub fn set(&mut self, v: VarId, value: bool) {
        self.values.insert(v, value);
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.values.contains_key(&v)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Componentwise complement, `a*`.
    pub fn star(&self) -> Assignment {
        Assignment {
            values: self.values.iter().map(|(&v, &b)| (v, !b)).collect(),
        }
    }

    /// Restriction to the given variables.
    pub fn restrict(&self, vars: &[VarId]) -> Assignment {
        Assignment {
            values: vars
                .iter()
                .filter_map(|v| self.values.get(v).map(|&b| (*v, b)))
                .collect(),
        }
    }
}

impl FromIterator<(VarId, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (VarId, bool)>>(iter: I) -> Self {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}

impl From<PartialAssignment> for Assignment {
    fn from(p: PartialAssignment) -> Self {
        Assignment { values: p.values }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (_, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ")")
    }
}

/// A partial map from variables to `{0,1}`; the `q(t)` of a term.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialAssignment {
    values: BTreeMap<VarId, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from pairs, rejecting a variable listed twice.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, bool)>>(pairs: I) -> Result<Self> {
        let mut p = PartialAssignment::new();
        for (v, b) in pairs {
            p.assign(v, b)?;
        }
        Ok(p)
    }

    pub fn assign(&mut self, v: VarId, value: bool) -> Result<()> {
        if self.values.insert(v, value).is_some() {
            return Err(Error::ConflictingAssignment(v));
        }
        Ok(())
    }

    pub fn get(&self, v: VarId) -> Option<bool> {
        self.values.get(&v).copied()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.values.contains_key(&v)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `self ∥ other` for disjoint partial assignments.
    pub fn concat(&self, other: &PartialAssignment) -> Result<PartialAssignment> {
        let mut out = self.clone();
        for (v, b) in other.iter() {
            out.assign(v, b)?;
        }
        Ok(out)
    }

    /// Completes to a total assignment over `self`'s variables plus `rest`.
    pub fn complete(&self, rest: &Assignment) -> Result<Assignment> {
        let mut out = Assignment { values: self.values.clone() };
        for (v, b) in rest.iter() {
            if out.values.insert(v, b).is_some() {
                return Err(Error::ConflictingAssignment(v));
            }
        }
        Ok(out)
    }
}

impl From<Assignment> for PartialAssignment {
    fn from(a: Assignment) -> Self {
        PartialAssignment { values: a.values }
    }
}
