use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// An element of `GF(2^k)` in the polynomial basis: bit `i` is the
/// coefficient of `θ^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Parses a hex bit vector, with or without a `0x` prefix.
    pub fn from_hex(s: &str) -> Result<FieldElement> {
        let t = s.trim();
        let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
        u32::from_str_radix(t, 16)
            .map(FieldElement)
            .map_err(|_| Error::InvalidHex(s.to_string()))
    }

    /// Coordinate `i` (coefficient of `θ^i`).
    pub fn coord(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// `GF(2)[θ] / (modulus)` for an irreducible modulus of degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    k: u32,
    modulus: u32,
}

fn degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

impl FieldSpec {
    /// The modulus is a bit vector including its leading term, e.g. `0b1011`
    /// for `θ^3 + θ + 1`.
    pub fn new(modulus: u32) -> Result<FieldSpec> {
        if modulus < 0b10 {
            return Err(Error::InvalidModulus(format!("{modulus:#x} has degree < 1")));
        }
        let k = degree(modulus);
        if k > MAX_DEGREE {
            return Err(Error::InvalidModulus(format!("degree {k} exceeds {MAX_DEGREE}")));
        }
        for d in 2u32..1 << (k / 2 + 1) {
            if degree(d) <= k / 2 && poly_rem(modulus, d) == 0 {
                return Err(Error::InvalidModulus(format!("{modulus:#x} is divisible by {d:#x}")));
            }
        }
        Ok(FieldSpec { k, modulus })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    /// The class of `θ`.
    pub fn theta(&self) -> FieldElement {
        self.reduce(0b10)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(FieldElement)
    }

    /// Reduces an arbitrary bit vector modulo the modulus.
    pub fn reduce(&self, bits: u32) -> FieldElement {
        FieldElement(poly_rem(bits, self.modulus))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.order()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc: u64 = 0;
        for i in 0..self.k {
            if b.0 >> i & 1 == 1 {
                acc ^= (a.0 as u64) << i;
            }
        }
        let m = self.modulus as u64;
        for i in (self.k..2 * self.k).rev() {
            if acc >> i & 1 == 1 {
                acc ^= m << (i - self.k);
            }
        }
        FieldElement(acc as u32)
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// The unique square root, `a^(2^(k-1))`.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        (1..self.k).fold(a, |x, _| self.square(x))
    }

    /// `a^(2^k - 2)`.
    pub fn inverse(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (1u64 << self.k) - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inverse(b)?))
    }

    /// `Tr(a) = a + a^2 + ... + a^(2^(k-1))`, which lies in `GF(2)`.
    pub fn trace(&self, a: FieldElement) -> bool {
        let mut x = a;
        let mut t = a;
        for _ in 1..self.k {
            x = self.square(x);
            t = self.add(t, x);
        }
        debug_assert!(t.0 <= 1);
        t.0 == 1
    }

    /// Roots of `pT^2 + qT + r = 0`, sorted. For `q ≠ 0` the equation is
    /// normalized to `u^2 + u = s` with `s = pr/q^2` and `T = (q/p)u`.
    pub fn solve_quadratic(&self, p: FieldElement, q: FieldElement, r: FieldElement) -> Result<Vec<FieldElement>> {
        if p.is_zero() {
            return Err(Error::NotQuadratic);
        }
        if q.is_zero() {
            return Ok(vec![self.sqrt(self.div(r, p)?)]);
        }
        let s = self.div(self.mul(p, r), self.square(q))?;
        if self.trace(s) {
            return Ok(Vec::new());
        }
        let u = self
            .elements()
            .find(|&u| self.add(self.square(u), u) == s)
            .expect("trace 0 implies a root");
        let scale = self.div(q, p)?;
        let mut roots = vec![self.mul(scale, u), self.mul(scale, self.add(u, FieldElement::ONE))];
        roots.sort();
        Ok(roots)
    }
}
