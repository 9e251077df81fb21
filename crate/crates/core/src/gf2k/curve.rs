use std::collections::BTreeSet;

use super::{lower_to_boolean, FieldElement, FieldSpec, SymbolicFieldElement};
use crate::boolalg::{Assignment, Polarity, VarId};
use crate::error::Result;
use crate::onset::OnSet;
use crate::solver::{bool_solve_from, decompose, BoolSystem, Mode, SolverConfig};

/// `y^2 + a1·xy + a3·y = x^3 + a2·x^2 + a4·x + a6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Curve {
    pub a1: FieldElement,
    pub a2: FieldElement,
    pub a3: FieldElement,
    pub a4: FieldElement,
    pub a6: FieldElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// One quadratic in `y` per `x`.
    FieldDirect,
    /// Lowered to a Boolean system and split over the `x` coordinates.
    BooleanSolver,
}

pub type Point = (FieldElement, FieldElement);

impl Curve {
    /// Left side minus right side at `(x, y)`.
    pub fn eval(&self, f: &FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement {
        let lhs = f.add(f.add(f.square(y), f.mul(self.a1, f.mul(x, y))), f.mul(self.a3, y));
        let x2 = f.square(x);
        let rhs = [f.mul(x2, x), f.mul(self.a2, x2), f.mul(self.a4, x), self.a6]
            .into_iter()
            .fold(FieldElement::ZERO, |s, t| f.add(s, t));
        f.add(lhs, rhs)
    }

    pub fn contains(&self, f: &FieldSpec, x: FieldElement, y: FieldElement) -> bool {
        self.eval(f, x, y).is_zero()
    }

    /// The defining polynomial over symbolic `x`, `y`.
    pub fn symbolic(&self, f: &FieldSpec, x: &SymbolicFieldElement, y: &SymbolicFieldElement) -> SymbolicFieldElement {
        let x2 = x.square(f);
        [
            y.square(f),
            x.mul(y, f).scale(self.a1, f),
            y.scale(self.a3, f),
            x2.mul(x, f),
            x2.scale(self.a2, f),
            x.scale(self.a4, f),
            SymbolicFieldElement::constant(f, self.a6),
        ]
        .into_iter()
        .reduce(|s, t| s.add(&t))
        .expect("nonempty")
    }

    /// The `y` values on the curve above `x`.
    pub fn points_at(&self, f: &FieldSpec, x: FieldElement) -> Result<Vec<FieldElement>> {
        let q = f.add(f.mul(self.a1, x), self.a3);
        let x2 = f.square(x);
        let r = [f.mul(x2, x), f.mul(self.a2, x2), f.mul(self.a4, x), self.a6]
            .into_iter()
            .fold(FieldElement::ZERO, |s, t| f.add(s, t));
        f.solve_quadratic(FieldElement::ONE, q, r)
    }
}

/// Coordinates of `x` are `VarId(0..k)` and of `y` are `VarId(k..2k)`,
/// constant coordinate first.
pub fn curve_system(curve: &Curve, f: &FieldSpec) -> (BoolSystem, Vec<VarId>, Vec<VarId>) {
    let k = f.k();
    let xv: Vec<_> = (0..k).map(VarId).collect();
    let yv: Vec<_> = (k..2 * k).map(VarId).collect();
    let poly = curve.symbolic(f, &SymbolicFieldElement::unknown(&xv), &SymbolicFieldElement::unknown(&yv));
    let all: Vec<_> = xv.iter().chain(&yv).copied().collect();
    (lower_to_boolean(&poly, &all), xv, yv)
}

/// The chain over the `x` coordinates from the highest down, each literal
/// negated: `{x_{k-1}, x_{k-1}' x_{k-2}, ..., x_{k-1}' ... x_0'}`.
pub fn x_split(xv: &[VarId]) -> Result<OnSet> {
    let lits: Vec<_> = xv.iter().rev().map(|&v| (v, Polarity::Negative)).collect();
    OnSet::term_chain(&lits)
}

pub fn enumerate_curve(curve: &Curve, f: &FieldSpec, method: Method) -> Result<BTreeSet<Point>> {
    let cfg = SolverConfig {
        mode: Mode::Enumerate,
        ..SolverConfig::default()
    };
    enumerate_curve_with(curve, f, method, &cfg)
}

/// As [`enumerate_curve`]; `cfg` drives the Boolean route (its mode is
/// forced to enumerate).
pub fn enumerate_curve_with(curve: &Curve, f: &FieldSpec, method: Method, cfg: &SolverConfig) -> Result<BTreeSet<Point>> {
    match method {
        Method::FieldDirect => {
            let mut out = BTreeSet::new();
            for x in f.elements() {
                for y in curve.points_at(f, x)? {
                    out.insert((x, y));
                }
            }
            Ok(out)
        }
        Method::BooleanSolver => {
            let (sys, xv, yv) = curve_system(curve, f);
            let kids = decompose(&sys, &x_split(&xv)?)?;
            let cfg = SolverConfig {
                mode: Mode::Enumerate,
                ..cfg.clone()
            };
            let outcome = bool_solve_from(&sys, kids, &cfg)?;
            Ok(outcome
                .expanded()
                .iter()
                .map(|a| (read(a, &xv), read(a, &yv)))
                .collect())
        }
    }
}

fn read(a: &Assignment, vars: &[VarId]) -> FieldElement {
    FieldElement(
        vars.iter()
            .enumerate()
            .map(|(i, &v)| (a.get(v).expect("solution covers every coordinate") as u32) << i)
            .sum(),
    )
}
