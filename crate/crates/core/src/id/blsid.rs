//! Challenge-response from BLS signatures: the verifier sends `M`, the
//! prover answers `σ = H(M)^x`, and the verifier checks
//! `e(g, σ) = e(v, H(M))`.

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};
use crate::sig::hash::{hash_to_group, BitString};

use super::{Decision, PublicKey, SchemeError, SchemeKeyPair, SchemeParams, SecretKey, MAX_REDRAWS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlsidPublic<B: Backend> {
    pub v: B::G1,
    pub params: SchemeParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlsidSecret {
    pub x: Scalar,
}

pub fn keygen<B: Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    params: SchemeParams,
    rng: &mut R,
) -> Result<SchemeKeyPair<B>, SchemeError> {
    if params.challenge_bits == 0 {
        return Err(SchemeError::BadChallengeLength { expected: 1, got: 0 });
    }
    let x = suite.random_nonzero_scalar(rng);
    Ok(key_from_secret(suite, params, x))
}

pub fn key_from_secret<B: Backend>(suite: &GroupSuite<B>, params: SchemeParams, x: Scalar) -> SchemeKeyPair<B> {
    let v = suite.g1_pow_raw(&suite.generator(), &x);
    SchemeKeyPair { public: PublicKey::Blsid(BlsidPublic { v, params }), secret: SecretKey::Blsid(BlsidSecret { x }) }
}

fn check_len(params: &SchemeParams, msg: &BitString) -> Result<(), SchemeError> {
    if msg.len() != params.challenge_bits {
        return Err(SchemeError::BadChallengeLength { expected: params.challenge_bits, got: msg.len() });
    }
    Ok(())
}

/// Uniform `n`-bit challenge whose hash is not the identity.
pub fn sample_challenge<B: Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    pk: &BlsidPublic<B>,
    rng: &mut R,
) -> Result<BitString, SchemeError> {
    for _ in 0..MAX_REDRAWS {
        let m = BitString::random(pk.params.challenge_bits, rng);
        let h = hash_to_group(&m, &pk.params.hash, suite)?;
        if !suite.is_g1_identity(&h) {
            return Ok(m);
        }
    }
    Err(SchemeError::DegenerateSuite)
}

/// `σ = H(M)^x`; one `G1` exponentiation.
pub fn respond<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &BlsidPublic<B>,
    sk: &BlsidSecret,
    msg: &BitString,
) -> Result<B::G1, SchemeError> {
    check_len(&pk.params, msg)?;
    let h = hash_to_group(msg, &pk.params.hash, suite)?;
    if suite.is_g1_identity(&h) {
        return Err(SchemeError::IdentityChallenge);
    }
    Ok(suite.g1_exp(&h, &sk.x))
}

/// `e(g, σ) = e(v, H(M))`; two pairings.
pub fn verify<B: Backend>(suite: &GroupSuite<B>, pk: &BlsidPublic<B>, msg: &BitString, sigma: &B::G1) -> Decision {
    if check_len(&pk.params, msg).is_err() {
        return Decision::Reject;
    }
    let Ok(h) = hash_to_group(msg, &pk.params.hash, suite) else {
        return Decision::Reject;
    };
    let lhs = suite.pairing(&suite.generator(), sigma);
    Decision::from_bool(lhs == suite.pairing(&pk.v, &h))
}
