//! Prime-order groups, the symmetric pairing interface, and cost metering.
//!
//! Every protocol in this crate is written against [`Backend`], which
//! supplies two cyclic groups `G1`, `G2` of the same prime order `p` and a
//! bilinear map `e: G1 × G1 → G2`. Two backends ship: [`Transparent`], where
//! group elements are their own discrete logarithms, and
//! [`crate::curve::TateBackend`], a supersingular curve with a reduced Tate
//! pairing.
//!
//! Protocol code never calls the backend directly for anything that Table-1
//! style accounting cares about. It goes through [`GroupSuite`], which counts
//! exponentiations and pairings against whichever [`Role`] is active.

mod field;
mod transparent;

use std::cell::RefCell;
use std::fmt;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

use crate::record::{Record, RecordError};
use crate::sig::hash::{BitString, HashError, HashMode};

pub(crate) use field::{decode_be, encode_be};
pub use field::{factorize, is_prime, scalar_width, Fp, Scalar, MAX_MODULUS};
pub use transparent::{Transparent, TransparentG1, TransparentG2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need a prime >= 5)")]
    ModulusTooSmall(u64),
    #[error("modulus {0} exceeds the supported range")]
    ModulusTooLarge(u64),
    #[error("malformed encoding: {0}")]
    MalformedEncoding(&'static str),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is not in the prime-order subgroup")]
    NotInSubgroup,
}

/// Which concrete pairing a suite runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Transparent,
    TateCurve,
}

impl BackendKind {
    pub fn name(&self) -> &'static str {
        match self {
            BackendKind::Transparent => "transparent",
            BackendKind::TateCurve => "tate-curve",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "transparent" => Some(BackendKind::Transparent),
            "tate-curve" | "tate" | "curve" => Some(BackendKind::TateCurve),
            _ => None,
        }
    }

    pub fn tag(&self) -> u8 {
        match self {
            BackendKind::Transparent => 1,
            BackendKind::TateCurve => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            1 => Some(BackendKind::Transparent),
            2 => Some(BackendKind::TateCurve),
            _ => None,
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A symmetric pairing between two cyclic groups of prime order.
///
/// Group operations are written multiplicatively. Exponents are plain
/// integers; callers reduce them modulo [`Backend::order`].
pub trait Backend: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type G1: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;
    type G2: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn kind(&self) -> BackendKind;
    /// The prime `p = |G1| = |G2|`.
    fn order(&self) -> u64;
    /// Field characteristic for curve backends; `None` otherwise.
    fn base_field(&self) -> Option<u64> {
        None
    }

    fn generator(&self) -> Self::G1;
    fn g1_identity(&self) -> Self::G1;
    fn g1_op(&self, a: &Self::G1, b: &Self::G1) -> Self::G1;
    fn g1_inv(&self, a: &Self::G1) -> Self::G1;
    fn g1_pow(&self, a: &Self::G1, k: u64) -> Self::G1;

    fn g2_identity(&self) -> Self::G2;
    fn g2_op(&self, a: &Self::G2, b: &Self::G2) -> Self::G2;
    fn g2_inv(&self, a: &Self::G2) -> Self::G2;
    fn g2_pow(&self, a: &Self::G2, k: u64) -> Self::G2;

    fn pair(&self, a: &Self::G1, b: &Self::G1) -> Self::G2;

    fn g1_len(&self) -> usize;
    fn g2_len(&self) -> usize;
    fn encode_g1(&self, a: &Self::G1, out: &mut Vec<u8>);
    fn decode_g1(&self, bytes: &[u8]) -> Result<Self::G1, AlgebraError>;
    fn encode_g2(&self, a: &Self::G2, out: &mut Vec<u8>);
    fn decode_g2(&self, bytes: &[u8]) -> Result<Self::G2, AlgebraError>;

    /// Full-domain hash into `G1`.
    fn hash_to_g1(&self, msg: &BitString, mode: &HashMode) -> Result<Self::G1, HashError>;

    /// Suite description: backend name, parameters, generator encoding.
    fn describe(&self) -> Record;
    fn from_record(record: &Record) -> Result<Self, RecordError>;
}

/// Discrete logarithms for backends small enough to compute them.
///
/// Only positive-control adversaries use this; protocol code never does.
pub trait DiscreteLog: Backend {
    /// `k` with `a = g^k` for the suite generator `g`.
    fn dlog_g1(&self, a: &Self::G1) -> Option<u64>;
    /// `k` with `x = e(g, g)^k`.
    fn dlog_g2(&self, x: &Self::G2) -> Option<u64>;
}

/// Protocol role that operations are charged to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Prover,
    Verifier,
}

/// Exponentiation and pairing counts for one role.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounts {
    pub g1_exp: u64,
    pub g2_exp: u64,
    pub pairings: u64,
}

/// Elements put on the wire by one role.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Bandwidth {
    pub g1: u64,
    pub g2: u64,
    pub zp: u64,
    /// `{0,1}^n` challenge strings (the starred column of the cost table).
    pub bits: u64,
    pub bytes: u64,
}

impl Bandwidth {
    pub fn plus(&self, other: &Bandwidth) -> Bandwidth {
        Bandwidth {
            g1: self.g1 + other.g1,
            g2: self.g2 + other.g2,
            zp: self.zp + other.zp,
            bits: self.bits + other.bits,
            bytes: self.bytes + other.bytes,
        }
    }
}

/// Per-role operation and bandwidth counters. Monotone until reset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CostCounter {
    pub prover: OpCounts,
    pub verifier: OpCounts,
    pub prover_sent: Bandwidth,
    pub verifier_sent: Bandwidth,
}

impl CostCounter {
    fn ops_mut(&mut self, role: Role) -> &mut OpCounts {
        match role {
            Role::Prover => &mut self.prover,
            Role::Verifier => &mut self.verifier,
        }
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.prover_sent.plus(&self.verifier_sent)
    }
}

#[derive(Debug, Default)]
struct Meter {
    role: Option<Role>,
    counts: CostCounter,
}

/// A backend plus cost counters: the ambient algebra of a session.
///
/// Counting is active only while a role is entered via [`GroupSuite::enter`];
/// bare calls are free. A suite is `!Sync`; use [`GroupSuite::fork`] to give
/// each concurrent worker its own.
#[derive(Debug)]
pub struct GroupSuite<B: Backend> {
    backend: B,
    meter: RefCell<Meter>,
}

/// Restores the previously active role when dropped.
pub struct RoleGuard<'a, B: Backend> {
    suite: &'a GroupSuite<B>,
    previous: Option<Role>,
}

impl<B: Backend> Drop for RoleGuard<'_, B> {
    fn drop(&mut self) {
        self.suite.meter.borrow_mut().role = self.previous;
    }
}

impl<B: Backend> GroupSuite<B> {
    pub fn new(backend: B) -> Self {
        Self { backend, meter: RefCell::new(Meter::default()) }
    }

    /// Same backend, fresh counters.
    pub fn fork(&self) -> Self {
        Self::new(self.backend.clone())
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn kind(&self) -> BackendKind {
        self.backend.kind()
    }

    pub fn order(&self) -> u64 {
        self.backend.order()
    }

    pub fn enter(&self, role: Role) -> RoleGuard<'_, B> {
        let previous = self.meter.borrow_mut().role.replace(role);
        RoleGuard { suite: self, previous }
    }

    pub fn active_role(&self) -> Option<Role> {
        self.meter.borrow().role
    }

    pub fn counters(&self) -> CostCounter {
        self.meter.borrow().counts
    }

    pub fn reset_counters(&self) {
        self.meter.borrow_mut().counts = CostCounter::default();
    }

    fn charge(&self, f: impl FnOnce(&mut OpCounts)) {
        let mut meter = self.meter.borrow_mut();
        if let Some(role) = meter.role {
            f(meter.counts.ops_mut(role));
        }
    }

    /// Charges wire traffic to the sending role.
    pub fn record_sent(&self, sender: Role, sent: Bandwidth) {
        let mut meter = self.meter.borrow_mut();
        let slot = match sender {
            Role::Prover => &mut meter.counts.prover_sent,
            Role::Verifier => &mut meter.counts.verifier_sent,
        };
        *slot = slot.plus(&sent);
    }

    pub fn scalar(&self, v: u64) -> Scalar {
        Scalar::new(v, self.order())
    }

    pub fn scalar_from_i64(&self, v: i64) -> Scalar {
        Scalar::from_i64(v, self.order())
    }

    pub fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar::random(self.order(), rng)
    }

    pub fn random_nonzero_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar::random_nonzero(self.order(), rng)
    }

    pub fn generator(&self) -> B::G1 {
        self.backend.generator()
    }

    /// `e(g, g)`, uncounted.
    pub fn gt_generator(&self) -> B::G2 {
        let g = self.backend.generator();
        self.backend.pair(&g, &g)
    }

    /// Uniform element of `G1` (sampling is not charged as an exponentiation).
    pub fn random_g1<R: Rng + ?Sized>(&self, rng: &mut R) -> B::G1 {
        let k = rng.gen_range(0..self.order());
        self.backend.g1_pow(&self.backend.generator(), k)
    }

    /// Uniform generator of `G1`.
    pub fn random_g1_generator<R: Rng + ?Sized>(&self, rng: &mut R) -> B::G1 {
        let k = rng.gen_range(1..self.order());
        self.backend.g1_pow(&self.backend.generator(), k)
    }

    pub fn random_g2<R: Rng + ?Sized>(&self, rng: &mut R) -> B::G2 {
        let k = rng.gen_range(0..self.order());
        self.backend.g2_pow(&self.gt_generator(), k)
    }

    pub fn random_g2_generator<R: Rng + ?Sized>(&self, rng: &mut R) -> B::G2 {
        let k = rng.gen_range(1..self.order());
        self.backend.g2_pow(&self.gt_generator(), k)
    }

    /// `b^k`, charged to the active role.
    pub fn g1_exp(&self, b: &B::G1, k: &Scalar) -> B::G1 {
        debug_assert_eq!(k.modulus(), self.order());
        self.charge(|c| c.g1_exp += 1);
        self.backend.g1_pow(b, k.value())
    }

    /// `b^k` in `G2`, charged to the active role.
    pub fn g2_exp(&self, b: &B::G2, k: &Scalar) -> B::G2 {
        debug_assert_eq!(k.modulus(), self.order());
        self.charge(|c| c.g2_exp += 1);
        self.backend.g2_pow(b, k.value())
    }

    /// `e(a, b)`, charged to the active role.
    pub fn pairing(&self, a: &B::G1, b: &B::G1) -> B::G2 {
        self.charge(|c| c.pairings += 1);
        self.backend.pair(a, b)
    }

    pub fn g1_identity(&self) -> B::G1 {
        self.backend.g1_identity()
    }

    pub fn g1_mul(&self, a: &B::G1, b: &B::G1) -> B::G1 {
        self.backend.g1_op(a, b)
    }

    pub fn g1_inv(&self, a: &B::G1) -> B::G1 {
        self.backend.g1_inv(a)
    }

    pub fn g1_div(&self, a: &B::G1, b: &B::G1) -> B::G1 {
        self.backend.g1_op(a, &self.backend.g1_inv(b))
    }

    pub fn g2_identity(&self) -> B::G2 {
        self.backend.g2_identity()
    }

    pub fn g2_mul(&self, a: &B::G2, b: &B::G2) -> B::G2 {
        self.backend.g2_op(a, b)
    }

    pub fn g2_inv(&self, a: &B::G2) -> B::G2 {
        self.backend.g2_inv(a)
    }

    pub fn g2_div(&self, a: &B::G2, b: &B::G2) -> B::G2 {
        self.backend.g2_op(a, &self.backend.g2_inv(b))
    }

    /// Uncounted exponentiation, for key generation, sampling and harnesses.
    pub fn g1_pow_raw(&self, b: &B::G1, k: &Scalar) -> B::G1 {
        self.backend.g1_pow(b, k.value())
    }

    pub fn g2_pow_raw(&self, b: &B::G2, k: &Scalar) -> B::G2 {
        self.backend.g2_pow(b, k.value())
    }

    pub fn pair_raw(&self, a: &B::G1, b: &B::G1) -> B::G2 {
        self.backend.pair(a, b)
    }

    pub fn is_g1_identity(&self, a: &B::G1) -> bool {
        *a == self.backend.g1_identity()
    }

    pub fn is_g2_identity(&self, a: &B::G2) -> bool {
        *a == self.backend.g2_identity()
    }
}

/// Decides whether `(g, g^a, g^b, g^c)` is a Diffie-Hellman tuple by
/// comparing `e(g, g^c)` with `e(g^a, g^b)`.
pub fn ddh_solve<B: Backend>(suite: &GroupSuite<B>, g: &B::G1, ga: &B::G1, gb: &B::G1, gc: &B::G1) -> bool {
    suite.pairing(g, gc) == suite.pairing(ga, gb)
}

/// Multiplicative order of `x` in `G2`, by repeated multiplication.
pub fn g2_order_brute_force<B: Backend>(backend: &B, x: &B::G2) -> u64 {
    let one = backend.g2_identity();
    let mut acc = x.clone();
    let mut n = 1;
    while acc != one {
        acc = backend.g2_op(&acc, x);
        n += 1;
    }
    n
}

/// Order of `x` in `G1`, by repeated multiplication.
pub fn g1_order_brute_force<B: Backend>(backend: &B, x: &B::G1) -> u64 {
    let one = backend.g1_identity();
    let mut acc = x.clone();
    let mut n = 1;
    while acc != one {
        acc = backend.g1_op(&acc, x);
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suite11() -> GroupSuite<Transparent> {
        GroupSuite::new(Transparent::new(11).unwrap())
    }

    fn el(suite: &GroupSuite<Transparent>, e: u64) -> TransparentG1 {
        suite.g1_pow_raw(&suite.generator(), &suite.scalar(e))
    }

    #[test]
    fn exponentiation_example() {
        let s = suite11();
        let b = el(&s, 3);
        assert_eq!(s.g1_exp(&b, &s.scalar(4)).exponent(), 1);
        assert_eq!(s.g1_exp(&b, &s.scalar(0)), s.g1_identity());
        assert_eq!(s.backend().g1_pow(&b, 11), s.g1_identity());
    }

    #[test]
    fn pairing_example() {
        let s = suite11();
        assert_eq!(s.pairing(&el(&s, 4), &el(&s, 3)).exponent(), 1);
        assert_eq!(s.pairing(&s.g1_identity(), &el(&s, 3)), s.g2_identity());
    }

    #[test]
    fn ddh_examples() {
        let s = suite11();
        let g = s.generator();
        assert!(ddh_solve(&s, &g, &el(&s, 2), &el(&s, 3), &el(&s, 6)));
        assert!(ddh_solve(&s, &g, &g, &g, &g));
        assert!(!ddh_solve(&s, &g, &el(&s, 2), &el(&s, 3), &el(&s, 5)));
    }

    #[test]
    fn ddh_exhaustive_small_primes() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            let s = GroupSuite::new(Transparent::new(p).unwrap());
            let g = s.generator();
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        let got = ddh_solve(&s, &g, &el(&s, a), &el(&s, b), &el(&s, c));
                        assert_eq!(got, c == (a * b) % p, "p={p} a={a} b={b} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn counters_follow_role() {
        let s = suite11();
        let g = s.generator();
        s.g1_exp(&g, &s.scalar(2));
        assert_eq!(s.counters(), CostCounter::default());
        {
            let _p = s.enter(Role::Prover);
            s.g1_exp(&g, &s.scalar(2));
            {
                let _v = s.enter(Role::Verifier);
                s.pairing(&g, &g);
                s.pairing(&g, &g);
            }
            s.g2_exp(&s.gt_generator(), &s.scalar(3));
        }
        s.pairing(&g, &g);
        let c = s.counters();
        assert_eq!(c.prover, OpCounts { g1_exp: 1, g2_exp: 1, pairings: 0 });
        assert_eq!(c.verifier, OpCounts { g1_exp: 0, g2_exp: 0, pairings: 2 });
        s.reset_counters();
        assert_eq!(s.counters(), CostCounter::default());
    }

    #[test]
    fn non_degenerate_orders() {
        for p in [11u64, 1009, 10007] {
            let t = Transparent::new(p).unwrap();
            let z = t.pair(&t.generator(), &t.generator());
            assert_eq!(g2_order_brute_force(&t, &z), p);
            assert_eq!(g1_order_brute_force(&t, &t.generator()), p);
        }
    }
}
