//! `F_{q^2} = F_q[i] / (i^2 + 1)`, valid when `q ≡ 3 (mod 4)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Fp;

/// `c0 + c1·i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq2 {
    pub c0: Fp,
    pub c1: Fp,
}

impl Fq2 {
    pub fn new(c0: Fp, c1: Fp) -> Self {
        debug_assert_eq!(c0.modulus(), c1.modulus());
        Self { c0, c1 }
    }

    pub fn from_base(c0: Fp) -> Self {
        Self { c0, c1: Fp::zero(c0.modulus()) }
    }

    pub fn one(q: u64) -> Self {
        Self::from_base(Fp::one(q))
    }

    pub fn zero(q: u64) -> Self {
        Self::from_base(Fp::zero(q))
    }

    pub fn modulus(&self) -> u64 {
        self.c0.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// Complex conjugate; equals the `q`-power Frobenius.
    pub fn conj(&self) -> Self {
        Self { c0: self.c0, c1: -self.c1 }
    }

    /// `c0^2 + c1^2`, the norm down to `F_q`.
    pub fn norm(&self) -> Fp {
        self.c0 * self.c0 + self.c1 * self.c1
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv().ok()?;
        let c = self.conj();
        Some(Self { c0: c.c0 * n, c1: c.c1 * n })
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.modulus());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }
}

impl Add for Fq2 {
    type Output = Fq2;
    fn add(self, rhs: Fq2) -> Fq2 {
        Fq2 { c0: self.c0 + rhs.c0, c1: self.c1 + rhs.c1 }
    }
}

impl Sub for Fq2 {
    type Output = Fq2;
    fn sub(self, rhs: Fq2) -> Fq2 {
        Fq2 { c0: self.c0 - rhs.c0, c1: self.c1 - rhs.c1 }
    }
}

impl Neg for Fq2 {
    type Output = Fq2;
    fn neg(self) -> Fq2 {
        Fq2 { c0: -self.c0, c1: -self.c1 }
    }
}

impl Mul for Fq2 {
    type Output = Fq2;
    fn mul(self, rhs: Fq2) -> Fq2 {
        // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
        Fq2 { c0: self.c0 * rhs.c0 - self.c1 * rhs.c1, c1: self.c0 * rhs.c1 + self.c1 * rhs.c0 }
    }
}

impl fmt::Debug for Fq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i (mod {})", self.c0, self.c1, self.modulus())
    }
}
