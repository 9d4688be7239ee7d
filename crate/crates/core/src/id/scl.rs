//! Three-move identification from the SCL signature: the prover commits to
//! `τ = g^w`, receives `r`, and answers `σ = g^{1/(x·r + w)}`; the verifier
//! checks `e(σ, τ · v^r) = e(g, g)`.

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};

use super::{Decision, PublicKey, SchemeError, SchemeKeyPair, SecretKey};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SclPublic<B: Backend> {
    pub g: B::G1,
    pub v: B::G1,
    pub z: B::G2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SclSecret {
    pub x: Scalar,
}

pub fn keygen<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> SchemeKeyPair<B> {
    let g = suite.random_g1_generator(rng);
    key_from_parts(suite, g, suite.random_nonzero_scalar(rng))
}

pub fn key_from_parts<B: Backend>(suite: &GroupSuite<B>, g: B::G1, x: Scalar) -> SchemeKeyPair<B> {
    let v = suite.g1_pow_raw(&g, &x);
    let z = suite.pair_raw(&g, &g);
    SchemeKeyPair { public: PublicKey::Scl(SclPublic { g, v, z }), secret: SecretKey::Scl(SclSecret { x }) }
}

/// `τ = g^w` for fresh nonzero `w`; one `G1` exponentiation.
pub fn commit<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, pk: &SclPublic<B>, rng: &mut R) -> (B::G1, Scalar) {
    let w = suite.random_nonzero_scalar(rng);
    (commit_with(suite, pk, &w), w)
}

pub fn commit_with<B: Backend>(suite: &GroupSuite<B>, pk: &SclPublic<B>, w: &Scalar) -> B::G1 {
    suite.g1_exp(&pk.g, w)
}

pub fn sample_challenge<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> Scalar {
    suite.random_nonzero_scalar(rng)
}

/// `σ = g^{1/(x·r + w)}`; one `G1` exponentiation. Aborts with
/// [`SchemeError::ZeroExponent`] when the exponent is not invertible.
pub fn respond<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &SclPublic<B>,
    sk: &SclSecret,
    w: &Scalar,
    r: &Scalar,
) -> Result<B::G1, SchemeError> {
    if r.is_zero() {
        return Err(SchemeError::ZeroChallenge);
    }
    let e = (sk.x * *r + *w).inv().map_err(|_| SchemeError::ZeroExponent)?;
    Ok(suite.g1_exp(&pk.g, &e))
}

/// `e(σ, τ · v^r) = z`; one `G1` exponentiation and one pairing.
pub fn verify<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &SclPublic<B>,
    tau: &B::G1,
    r: &Scalar,
    sigma: &B::G1,
) -> Decision {
    let base = suite.g1_mul(tau, &suite.g1_exp(&pk.v, r));
    Decision::from_bool(suite.pairing(sigma, &base) == pk.z)
}
