//! Challenge-response on the CDH problem: the verifier sends `h`, the
//! prover answers `σ = h^x`, and the verifier checks `e(g, σ) = e(v, h)`.

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};

use super::{Decision, PublicKey, SchemeError, SchemeKeyPair, SecretKey};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdhidPublic<B: Backend> {
    pub v: B::G1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdhidSecret {
    pub x: Scalar,
}

pub fn keygen<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> SchemeKeyPair<B> {
    key_from_secret(suite, suite.random_nonzero_scalar(rng))
}

pub fn key_from_secret<B: Backend>(suite: &GroupSuite<B>, x: Scalar) -> SchemeKeyPair<B> {
    let v = suite.g1_pow_raw(&suite.generator(), &x);
    SchemeKeyPair { public: PublicKey::Cdhid(CdhidPublic { v }), secret: SecretKey::Cdhid(CdhidSecret { x }) }
}

/// Uniform non-identity `h`.
pub fn sample_challenge<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> B::G1 {
    suite.random_g1_generator(rng)
}

/// `σ = h^x`; one `G1` exponentiation.
pub fn respond<B: Backend>(suite: &GroupSuite<B>, sk: &CdhidSecret, h: &B::G1) -> Result<B::G1, SchemeError> {
    if suite.is_g1_identity(h) {
        return Err(SchemeError::IdentityChallenge);
    }
    Ok(suite.g1_exp(h, &sk.x))
}

/// `e(g, σ) = e(v, h)`; two pairings.
pub fn verify<B: Backend>(suite: &GroupSuite<B>, pk: &CdhidPublic<B>, h: &B::G1, sigma: &B::G1) -> Decision {
    let lhs = suite.pairing(&suite.generator(), sigma);
    Decision::from_bool(lhs == suite.pairing(&pk.v, h))
}
