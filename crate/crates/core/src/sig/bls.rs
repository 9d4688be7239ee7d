//! BLS short signatures: `σ = H(M)^x`, valid iff `e(g, σ) = e(v, H(M))`.

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};

use super::hash::{hash_to_group, BitString, HashError, HashMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlsKey<B: Backend> {
    pub x: Scalar,
    pub v: B::G1,
}

pub fn keygen<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> BlsKey<B> {
    key_from_secret(suite, suite.random_nonzero_scalar(rng))
}

pub fn key_from_secret<B: Backend>(suite: &GroupSuite<B>, x: Scalar) -> BlsKey<B> {
    BlsKey { v: suite.g1_pow_raw(&suite.generator(), &x), x }
}

pub fn sign<B: Backend>(
    suite: &GroupSuite<B>,
    x: &Scalar,
    msg: &BitString,
    mode: &HashMode,
) -> Result<B::G1, HashError> {
    let h = hash_to_group(msg, mode, suite)?;
    Ok(suite.g1_exp(&h, x))
}

pub fn verify<B: Backend>(suite: &GroupSuite<B>, v: &B::G1, msg: &BitString, sigma: &B::G1, mode: &HashMode) -> bool {
    let Ok(h) = hash_to_group(msg, mode, suite) else {
        return false;
    };
    suite.pairing(&suite.generator(), sigma) == suite.pairing(v, &h)
}
