//! Three-move identification from the HLS signature: the prover commits to
//! `w = z^r`, receives `c`, and answers `σ = P^r · Q^c`; the verifier
//! checks `e(P, σ) = w · v^c`.

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};

use super::{Decision, PublicKey, SchemeError, SchemeKeyPair, SecretKey};

/// `R = P^a`, `S = P^b`, `z = e(P, P)`, `v = e(P, Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HlsPublic<B: Backend> {
    pub p: B::G1,
    pub r: B::G1,
    pub s: B::G1,
    pub z: B::G2,
    pub v: B::G2,
}

/// `Q = P^{ab}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HlsSecret<B: Backend> {
    pub q: B::G1,
}

pub fn keygen<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> SchemeKeyPair<B> {
    let p = suite.random_g1_generator(rng);
    let a = suite.random_nonzero_scalar(rng);
    let b = suite.random_nonzero_scalar(rng);
    key_from_parts(suite, p, a, b)
}

pub fn key_from_parts<B: Backend>(suite: &GroupSuite<B>, p: B::G1, a: Scalar, b: Scalar) -> SchemeKeyPair<B> {
    let r = suite.g1_pow_raw(&p, &a);
    let s = suite.g1_pow_raw(&p, &b);
    let q = suite.g1_pow_raw(&p, &(a * b));
    let z = suite.pair_raw(&p, &p);
    let v = suite.pair_raw(&p, &q);
    SchemeKeyPair { public: PublicKey::Hls(HlsPublic { p, r, s, z, v }), secret: SecretKey::Hls(HlsSecret { q }) }
}

/// `w = z^r` for fresh nonzero `r`; one `G2` exponentiation. Only `w` is
/// sent.
pub fn commit<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, pk: &HlsPublic<B>, rng: &mut R) -> (B::G2, Scalar) {
    let r = suite.random_nonzero_scalar(rng);
    (commit_with(suite, pk, &r), r)
}

pub fn commit_with<B: Backend>(suite: &GroupSuite<B>, pk: &HlsPublic<B>, r: &Scalar) -> B::G2 {
    suite.g2_exp(&pk.z, r)
}

pub fn sample_challenge<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> Scalar {
    suite.random_nonzero_scalar(rng)
}

/// `σ = P^r · Q^c`; two `G1` exponentiations.
pub fn respond<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &HlsPublic<B>,
    sk: &HlsSecret<B>,
    r: &Scalar,
    c: &Scalar,
) -> Result<B::G1, SchemeError> {
    if c.is_zero() {
        return Err(SchemeError::ZeroChallenge);
    }
    Ok(suite.g1_mul(&suite.g1_exp(&pk.p, r), &suite.g1_exp(&sk.q, c)))
}

/// `e(P, σ) = w · v^c`; one pairing and one `G2` exponentiation.
pub fn verify<B: Backend>(suite: &GroupSuite<B>, pk: &HlsPublic<B>, w: &B::G2, c: &Scalar, sigma: &B::G1) -> Decision {
    let lhs = suite.pairing(&pk.p, sigma);
    Decision::from_bool(lhs == suite.g2_mul(w, &suite.g2_exp(&pk.v, c)))
}
