//! Boneh-Boyen signatures over scalar messages:
//! `σ = g^{1/(x+m+yr)}`, valid iff `e(σ, u·g^m·v^r) = e(g, g)`.
//!
//! The SDHID identification scheme is this signature applied to the
//! verifier's challenge, so keys and arithmetic are shared with
//! [`crate::id::sdhid`].

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};
use crate::id::sdhid::{self, SdhidResponse};
use crate::id::{PublicKey, SchemeError, SecretKey};

pub use crate::id::sdhid::{SdhidPublic as BbPublic, SdhidSecret as BbSecret};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbKey<B: Backend> {
    pub public: BbPublic<B>,
    pub secret: BbSecret,
}

pub type BbSignature<B> = SdhidResponse<B>;

pub fn keygen<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> BbKey<B> {
    let x = suite.random_nonzero_scalar(rng);
    let y = suite.random_nonzero_scalar(rng);
    key_from_secret(suite, x, y)
}

pub fn key_from_secret<B: Backend>(suite: &GroupSuite<B>, x: Scalar, y: Scalar) -> BbKey<B> {
    match sdhid::key_from_secret(suite, x, y) {
        crate::id::SchemeKeyPair { public: PublicKey::Sdhid(public), secret: SecretKey::Sdhid(secret) } => {
            BbKey { public, secret }
        }
        _ => unreachable!(),
    }
}

/// Signs `m ∈ Z_p^*`, redrawing `r` while `x + m + y·r ≡ 0`.
pub fn sign<B: Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    sk: &BbSecret,
    m: &Scalar,
    rng: &mut R,
) -> Result<BbSignature<B>, SchemeError> {
    sdhid::respond(suite, sk, m, rng)
}

pub fn sign_with_nonces<B: Backend>(
    suite: &GroupSuite<B>,
    sk: &BbSecret,
    m: &Scalar,
    nonces: impl IntoIterator<Item = Scalar>,
) -> Result<BbSignature<B>, SchemeError> {
    sdhid::respond_with_nonces(suite, sk, m, nonces)
}

pub fn verify<B: Backend>(suite: &GroupSuite<B>, pk: &BbPublic<B>, m: &Scalar, sigma: &B::G1, r: &Scalar) -> bool {
    sdhid::verify(suite, pk, m, sigma, r).is_accept()
}
