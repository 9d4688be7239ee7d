//! Arithmetic in a prime field `Z_p` for desk-scale primes (`p < 2^32`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::AlgebraError;

/// Largest modulus accepted. Products are formed in `u128` so this is a
/// convention to keep encodings short, not an overflow limit.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// An element of `Z_p`, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

/// Exponents, challenges and secret scalars all live in `Z_p`.
pub type Scalar = Fp;

impl Fp {
    /// Reduces `value` modulo `modulus`.
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2);
        Self { value: value % modulus, modulus }
    }

    /// Reduces a signed integer into `[0, modulus)`.
    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m);
        Self { value: v as u64, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Uniform element of `Z_p`.
    pub fn random<R: Rng + ?Sized>(modulus: u64, rng: &mut R) -> Self {
        Self { value: rng.gen_range(0..modulus), modulus }
    }

    /// Uniform element of `Z_p^*`.
    pub fn random_nonzero<R: Rng + ?Sized>(modulus: u64, rng: &mut R) -> Self {
        Self { value: rng.gen_range(1..modulus), modulus }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.value == 0 {
            return Err(AlgebraError::ZeroInverse);
        }
        let (mut old_r, mut r) = (self.value as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1, "modulus is not prime");
        let v = old_s.rem_euclid(self.modulus as i128) as u64;
        Ok(Self { value: v, modulus: self.modulus })
    }

    /// `self / rhs`.
    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(*self * rhs.inv()?)
    }

    /// Legendre symbol test: true for zero and for quadratic residues.
    pub fn is_square(&self) -> bool {
        self.value == 0 || self.pow((self.modulus - 1) / 2).value == 1
    }

    /// Square root for moduli `≡ 3 (mod 4)`; `None` for non-residues.
    pub fn sqrt(&self) -> Option<Self> {
        debug_assert_eq!(self.modulus % 4, 3);
        let root = self.pow((self.modulus + 1) / 4);
        (root * root == *self).then_some(root)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp { value: v as u64, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp { value: v as u64, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp { value: v, modulus: self.modulus }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Deterministic trial-division primality test; fine up to `MAX_MODULUS`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Fixed big-endian width used for scalars and transparent elements.
///
/// Never narrower than two bytes so that every desk-scale suite shares one
/// framing layout.
pub fn scalar_width(modulus: u64) -> usize {
    let bits = 64 - (modulus - 1).leading_zeros() as usize;
    bits.div_ceil(8).max(2)
}

pub(crate) fn encode_be(value: u64, width: usize, out: &mut Vec<u8>) {
    let bytes = value.to_be_bytes();
    out.extend_from_slice(&bytes[8 - width..]);
}

pub(crate) fn decode_be(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0u64, |acc, b| (acc << 8) | *b as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: search for the inverse by enumeration.
    fn brute_inverse(x: u64, p: u64) -> Option<u64> {
        (1..p).find(|y| (x * y) % p == 1)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Fp::new(10, 11).inv().unwrap().value(), 10);
        assert_eq!(Fp::new(1, 11).inv().unwrap().value(), 1);
        assert_eq!(Fp::new(0, 11).inv(), Err(AlgebraError::ZeroInverse));
    }

    #[test]
    fn inverse_matches_enumeration() {
        for p in [5u64, 11, 13, 31, 101] {
            for x in 1..p {
                assert_eq!(Fp::new(x, p).inv().unwrap().value(), brute_inverse(x, p).unwrap());
            }
        }
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(Fp::from_i64(-26, 11).value(), 7);
        assert_eq!(Fp::from_i64(-11, 11).value(), 0);
    }

    #[test]
    fn sqrt_on_3_mod_4() {
        let q = 59;
        for v in 0..q {
            let x = Fp::new(v, q);
            match x.sqrt() {
                Some(r) => assert_eq!(r * r, x),
                None => assert!(!x.is_square()),
            }
        }
    }

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(10007));
        assert!(!is_prime(1));
        assert!(!is_prime(10005));
        assert_eq!(factorize(60), vec![2, 2, 3, 5]);
        assert_eq!(factorize(524), vec![2, 2, 131]);
    }

    #[test]
    fn widths() {
        assert_eq!(scalar_width(11), 2);
        assert_eq!(scalar_width(1009), 2);
        assert_eq!(scalar_width(70001), 3);
    }
}
