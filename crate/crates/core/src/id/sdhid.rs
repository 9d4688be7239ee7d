//! Challenge-response from Boneh-Boyen signatures: the verifier sends `m`,
//! the prover answers `σ = g^{1/(x+m+yr)}` with fresh `r`, and the verifier
//! checks `e(σ, u·g^m·v^r) = e(g, g)`.

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};

use super::{Decision, PublicKey, SchemeError, SchemeKeyPair, SecretKey};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdhidPublic<B: Backend> {
    pub u: B::G1,
    pub v: B::G1,
    pub z: B::G2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdhidSecret {
    pub x: Scalar,
    pub y: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdhidResponse<B: Backend> {
    pub sigma: B::G1,
    pub r: Scalar,
    /// Nonces discarded because `x + m + y·r ≡ 0`.
    pub redraws: u32,
}

pub fn keygen<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> SchemeKeyPair<B> {
    let x = suite.random_nonzero_scalar(rng);
    let y = suite.random_nonzero_scalar(rng);
    key_from_secret(suite, x, y)
}

pub fn key_from_secret<B: Backend>(suite: &GroupSuite<B>, x: Scalar, y: Scalar) -> SchemeKeyPair<B> {
    let g = suite.generator();
    SchemeKeyPair {
        public: PublicKey::Sdhid(SdhidPublic {
            u: suite.g1_pow_raw(&g, &x),
            v: suite.g1_pow_raw(&g, &y),
            z: suite.gt_generator(),
        }),
        secret: SecretKey::Sdhid(SdhidSecret { x, y }),
    }
}

pub fn sample_challenge<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> Scalar {
    suite.random_nonzero_scalar(rng)
}

/// Draws `r` from `rng` until the denominator is nonzero.
pub fn respond<B: Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    sk: &SdhidSecret,
    m: &Scalar,
    rng: &mut R,
) -> Result<SdhidResponse<B>, SchemeError> {
    let nonces = std::iter::repeat_with(|| suite.random_nonzero_scalar(rng));
    respond_with_nonces(suite, sk, m, nonces)
}

/// Takes nonces from `nonces` in order, skipping any that zero the
/// denominator. One `G1` exponentiation.
pub fn respond_with_nonces<B: Backend>(
    suite: &GroupSuite<B>,
    sk: &SdhidSecret,
    m: &Scalar,
    nonces: impl IntoIterator<Item = Scalar>,
) -> Result<SdhidResponse<B>, SchemeError> {
    if m.is_zero() {
        return Err(SchemeError::ZeroChallenge);
    }
    let mut redraws = 0;
    for r in nonces {
        let denom = sk.x + *m + sk.y * r;
        match denom.inv() {
            Ok(e) => {
                let sigma = suite.g1_exp(&suite.generator(), &e);
                return Ok(SdhidResponse { sigma, r, redraws });
            }
            Err(_) => redraws += 1,
        }
    }
    Err(SchemeError::DegenerateSuite)
}

/// `e(σ, u·g^m·v^r) = z`; two `G1` exponentiations and one pairing.
pub fn verify<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &SdhidPublic<B>,
    m: &Scalar,
    sigma: &B::G1,
    r: &Scalar,
) -> Decision {
    let gm = suite.g1_exp(&suite.generator(), m);
    let vr = suite.g1_exp(&pk.v, r);
    let base = suite.g1_mul(&suite.g1_mul(&pk.u, &gm), &vr);
    Decision::from_bool(suite.pairing(sigma, &base) == pk.z)
}
