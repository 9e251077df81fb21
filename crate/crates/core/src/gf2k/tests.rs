use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::boolalg::{Assignment, VarId};
use crate::error::Error;
use crate::solver::{bool_solve, Mode, SolverConfig};

fn f8() -> FieldSpec {
    FieldSpec::new(0b1011).unwrap()
}

fn f16() -> FieldSpec {
    FieldSpec::new(0b10011).unwrap()
}

fn e(bits: u32) -> FieldElement {
    FieldElement(bits)
}

/// `y^2 + xy + x^3 + (1+θ)x^2 + θ = 0` over the 8-element field.
fn sample_curve() -> Curve {
    Curve {
        a1: e(1),
        a2: e(0b011),
        a6: e(0b010),
        ..Curve::default()
    }
}

/// All `(x, y)` pairs satisfying the curve equation, by substitution.
fn oracle_points(c: &Curve, f: &FieldSpec) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for x in f.elements() {
        for y in f.elements() {
            if c.contains(f, x, y) {
                out.insert((x, y));
            }
        }
    }
    out
}

fn random_curve(rng: &mut StdRng, f: &FieldSpec) -> Curve {
    let mut r = || FieldElement(rng.gen_range(0..f.order()));
    Curve {
        a1: r(),
        a2: r(),
        a3: r(),
        a4: r(),
        a6: r(),
    }
}

#[test]
fn modulus_validation() {
    assert!(FieldSpec::new(0b1011).is_ok());
    assert!(FieldSpec::new(0b1101).is_ok());
    assert!(FieldSpec::new(0b10011).is_ok());
    assert!(matches!(FieldSpec::new(0b1001), Err(Error::InvalidModulus(_))));
    assert!(matches!(FieldSpec::new(0b10101), Err(Error::InvalidModulus(_))));
    assert!(matches!(FieldSpec::new(1), Err(Error::InvalidModulus(_))));
    assert!(matches!(FieldSpec::new(1 << 17 | 1), Err(Error::InvalidModulus(_))));
    // x^16 + x^12 + x^3 + x + 1
    assert!(FieldSpec::new(0x1100b).is_ok());
    let irreducible_deg4 = (16u32..32).filter(|&m| FieldSpec::new(m).is_ok()).count();
    assert_eq!(irreducible_deg4, 3);
}

#[test]
fn theta_cubed() {
    let f = f8();
    let t = f.theta();
    assert_eq!(f.pow(t, 3), f.add(t, FieldElement::ONE));
}

#[test]
fn sqrt_of_theta() {
    let f = f8();
    let t = f.theta();
    let found: Vec<_> = f.elements().filter(|&s| f.square(s) == t).collect();
    assert_eq!(found, vec![f.sqrt(t)]);
    assert_eq!(f.sqrt(t), e(0b110));
}

#[test]
fn field_axioms_exhaustive() {
    for f in [f8(), f16()] {
        for a in f.elements() {
            assert_eq!(f.square(f.sqrt(a)), a);
            assert_eq!(f.sqrt(f.square(a)), a);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inverse(a).unwrap()), FieldElement::ONE);
            }
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.trace(f.add(a, b)), f.trace(a) ^ f.trace(b));
            }
        }
        assert_eq!(f.inverse(FieldElement::ZERO), Err(Error::DivisionByZero));
    }
}

#[test]
fn trace_values() {
    let f = f8();
    assert!(!f.trace(FieldElement::ZERO));
    assert!(f.trace(e(0b111)));
    assert_eq!(f.elements().filter(|&a| f.trace(a)).count(), 4);
}

#[test]
fn quadratic_examples() {
    let f = f8();
    assert!(f.solve_quadratic(e(1), e(1), e(0b111)).unwrap().is_empty());
    assert_eq!(f.solve_quadratic(e(1), e(0), f.theta()).unwrap(), vec![f.sqrt(f.theta())]);
    assert_eq!(f.solve_quadratic(e(0), e(1), e(1)), Err(Error::NotQuadratic));
}

#[test]
fn quadratic_matches_substitution() {
    let mut rng = StdRng::seed_from_u64(11);
    for f in [f8(), f16()] {
        for _ in 0..200 {
            let p = FieldElement(rng.gen_range(1..f.order()));
            let q = FieldElement(rng.gen_range(0..f.order()));
            let r = FieldElement(rng.gen_range(0..f.order()));
            let want: Vec<_> = f
                .elements()
                .filter(|&t| f.add(f.add(f.mul(p, f.square(t)), f.mul(q, t)), r).is_zero())
                .collect();
            assert_eq!(f.solve_quadratic(p, q, r).unwrap(), want);
        }
    }
}

#[test]
fn hex_encoding() {
    assert_eq!(FieldElement::from_hex("0x6").unwrap(), e(6));
    assert_eq!(FieldElement::from_hex("b").unwrap(), e(11));
    assert!(matches!(FieldElement::from_hex("zz"), Err(Error::InvalidHex(_))));
    assert_eq!(e(6).to_string(), "0x6");
}

#[test]
fn lower_linear() {
    let f = f8();
    let xv: Vec<_> = (0..3).map(VarId).collect();
    let expr = SymbolicFieldElement::unknown(&xv).add(&SymbolicFieldElement::constant(&f, e(0b101)));
    let sys = lower_to_boolean(&expr, &xv);
    assert_eq!(sys.equations().len(), 3);
    let cfg = SolverConfig {
        mode: Mode::Enumerate,
        workers: 1,
        ..SolverConfig::default()
    };
    let sols = bool_solve(&sys, &cfg).unwrap().expanded();
    assert_eq!(sols.len(), 1);
    assert_eq!(SymbolicFieldElement::unknown(&xv).eval(&sols[0]).unwrap(), e(0b101));
}

#[test]
fn lower_square_root() {
    let f = f8();
    let xv: Vec<_> = (0..3).map(VarId).collect();
    let x = SymbolicFieldElement::unknown(&xv);
    let expr = x.square(&f).add(&SymbolicFieldElement::constant(&f, f.theta()));
    let cfg = SolverConfig {
        mode: Mode::Enumerate,
        workers: 1,
        ..SolverConfig::default()
    };
    let sols = bool_solve(&lower_to_boolean(&expr, &xv), &cfg).unwrap().expanded();
    let roots: Vec<_> = sols.iter().map(|a| x.eval(a).unwrap()).collect();
    assert_eq!(roots, vec![f.sqrt(f.theta())]);
}

#[test]
fn symbolic_mul_matches_field() {
    for f in [f8(), f16()] {
        let k = f.k();
        let av: Vec<_> = (0..k).map(VarId).collect();
        let bv: Vec<_> = (k..2 * k).map(VarId).collect();
        let prod = SymbolicFieldElement::unknown(&av).mul(&SymbolicFieldElement::unknown(&bv), &f);
        for a in f.elements() {
            for b in f.elements() {
                let pt: Assignment = (0..k as usize)
                    .map(|i| (av[i], a.coord(i)))
                    .chain((0..k as usize).map(|i| (bv[i], b.coord(i))))
                    .collect();
                assert_eq!(prod.eval(&pt).unwrap(), f.mul(a, b));
            }
        }
    }
}

#[test]
fn sample_curve_system_shape() {
    let (sys, xv, yv) = curve_system(&sample_curve(), &f8());
    assert_eq!(sys.equations().len(), 3);
    assert_eq!(sys.vars().len(), 6);
    let t = x_split(&xv).unwrap();
    let terms = t.terms().unwrap();
    assert_eq!(terms.len(), 4);
    assert_eq!(terms[0].to_string(), "x2");
    assert_eq!(yv, vec![VarId(3), VarId(4), VarId(5)]);
}

#[test]
fn sample_curve_points() {
    let f = f8();
    let c = sample_curve();
    let t = f.theta();
    assert_eq!(c.points_at(&f, FieldElement::ZERO).unwrap(), vec![f.sqrt(t)]);
    assert_eq!(c.points_at(&f, t).unwrap().len(), 2);
    assert_eq!(c.points_at(&f, f.add(t, FieldElement::ONE)).unwrap().len(), 2);
    for x in f.elements() {
        let want: Vec<_> = f.elements().filter(|&y| c.contains(&f, x, y)).collect();
        assert_eq!(c.points_at(&f, x).unwrap(), want);
    }
    let oracle = oracle_points(&c, &f);
    assert_eq!(enumerate_curve(&c, &f, Method::FieldDirect).unwrap(), oracle);
    assert_eq!(enumerate_curve(&c, &f, Method::BooleanSolver).unwrap(), oracle);
}

#[test]
fn random_curves_agree() {
    let mut rng = StdRng::seed_from_u64(2024);
    for f in [f8(), f16()] {
        for _ in 0..20 {
            let c = random_curve(&mut rng, &f);
            let oracle = oracle_points(&c, &f);
            assert_eq!(enumerate_curve(&c, &f, Method::FieldDirect).unwrap(), oracle);
            let cfg = SolverConfig {
                n0: rng.gen_range(1..=4),
                split_depth: rng.gen_range(1..=3),
                workers: rng.gen_range(1..=3),
                mode: Mode::Enumerate,
                check_solutions: true,
            };
            assert_eq!(enumerate_curve_with(&c, &f, Method::BooleanSolver, &cfg).unwrap(), oracle);
        }
    }
}

proptest! {
    #[test]
    fn lowering_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = if rng.gen() { f8() } else { f16() };
        let c = random_curve(&mut rng, &f);
        let (sys, xv, yv) = curve_system(&c, &f);
        for x in f.elements() {
            for y in f.elements() {
                let pt: Assignment = xv.iter().enumerate().map(|(i, &v)| (v, x.coord(i)))
                    .chain(yv.iter().enumerate().map(|(i, &v)| (v, y.coord(i))))
                    .collect();
                prop_assert_eq!(sys.satisfied_by(&pt).unwrap(), c.contains(&f, x, y));
            }
        }
    }
}
