//! `GF(2^k)` arithmetic in a polynomial basis, lowering of field equations
//! to Boolean systems, and point enumeration on Weierstrass curves.

mod curve;
mod field;
mod symbolic;

pub use curve::{curve_system, enumerate_curve, enumerate_curve_with, x_split, Curve, Method, Point};
pub use field::{FieldElement, FieldSpec, MAX_DEGREE};
pub use symbolic::{lower_to_boolean, SymbolicFieldElement};

#[cfg(test)]
mod tests;
