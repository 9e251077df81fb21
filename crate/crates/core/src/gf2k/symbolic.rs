use super::{FieldElement, FieldSpec};
use crate::boolalg::{Assignment, BoolFunc, VarId};
use crate::error::Result;
use crate::solver::{BoolSystem, Equation};

/// A field element whose `k` coordinates are Boolean functions; coordinate
/// `i` is the coefficient of `θ^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicFieldElement {
    coords: Vec<BoolFunc>,
}

impl SymbolicFieldElement {
    pub fn constant(spec: &FieldSpec, c: FieldElement) -> Self {
        SymbolicFieldElement {
            coords: (0..spec.k() as usize).map(|i| BoolFunc::constant(c.coord(i))).collect(),
        }
    }

    /// An unknown whose coordinates are the given variables, constant
    /// coordinate first.
    pub fn unknown(vars: &[VarId]) -> Self {
        SymbolicFieldElement {
            coords: vars.iter().map(|&v| BoolFunc::var(v)).collect(),
        }
    }

    pub fn coords(&self) -> &[BoolFunc] {
        &self.coords
    }

    pub fn add(&self, other: &Self) -> Self {
        SymbolicFieldElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.xor(b)).collect(),
        }
    }

    /// Schoolbook product followed by reduction `θ^k = Σ m_j θ^j`.
    pub fn mul(&self, other: &Self, spec: &FieldSpec) -> Self {
        let k = spec.k() as usize;
        let mut prod = vec![BoolFunc::zero(); 2 * k - 1];
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] = prod[i + j].xor(&a.and(b));
            }
        }
        for i in (k..2 * k - 1).rev() {
            let hi = std::mem::replace(&mut prod[i], BoolFunc::zero());
            for j in (0..k).filter(|&j| spec.modulus() >> j & 1 == 1) {
                prod[i - k + j] = prod[i - k + j].xor(&hi);
            }
        }
        prod.truncate(k);
        SymbolicFieldElement { coords: prod }
    }

    pub fn square(&self, spec: &FieldSpec) -> Self {
        self.mul(self, spec)
    }

    pub fn scale(&self, c: FieldElement, spec: &FieldSpec) -> Self {
        self.mul(&SymbolicFieldElement::constant(spec, c), spec)
    }

    pub fn eval(&self, a: &Assignment) -> Result<FieldElement> {
        let mut bits = 0;
        for (i, f) in self.coords.iter().enumerate() {
            bits |= (f.eval(a)? as u32) << i;
        }
        Ok(FieldElement(bits))
    }
}

/// The equation `expr = 0` as one Boolean equation per coordinate, over the
/// listed unknowns plus any other variable the coordinates mention.
pub fn lower_to_boolean(expr: &SymbolicFieldElement, unknowns: &[VarId]) -> BoolSystem {
    let eqs = expr
        .coords
        .iter()
        .map(|f| Equation::new(f.clone(), BoolFunc::zero()))
        .collect();
    BoolSystem::new(eqs, unknowns.iter().copied())
}
