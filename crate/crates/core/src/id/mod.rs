//! The six identification protocols.
//!
//! | scheme | moves | prover sends            | verifier sends |
//! |--------|-------|-------------------------|----------------|
//! | BLSID  | 2     | `σ = H(M)^x`            | `M ∈ {0,1}^n`  |
//! | CDHID  | 2     | `σ = h^x`               | `h ∈ G1`       |
//! | SDHID  | 2     | `σ = g^{1/(x+m+yr)}, r` | `m ∈ Z_p^*`    |
//! | OWFID  | 3     | `x`; then `T, a`        | `m ∈ Z_p^*`    |
//! | SCL    | 3     | `τ`; then `σ`           | `r ∈ Z_p^*`    |
//! | HLS    | 3     | `w`; then `σ`           | `c ∈ Z_p^*`    |
//!
//! Each scheme module exposes typed `respond`/`verify` (and `commit` for the
//! three-move schemes). [`session`] wraps them in message-level state
//! machines shared by in-process runs, the wire layer and the attack
//! harnesses.

pub mod blsid;
pub mod cdhid;
mod codec;
pub mod hls;
pub mod owfid;
pub mod scl;
pub mod sdhid;
pub mod session;

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Backend, BackendKind, GroupSuite, Scalar};
use crate::sig::hash::{BitString, HashError, HashMode};

pub use codec::MessageCodec;
pub use session::{run_session, sample_challenge, verify_messages, Prover, Transcript, Verifier};

/// Upper bound on rejection-sampling loops in key and challenge generation.
pub const MAX_REDRAWS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("challenge is the identity element")]
    IdentityChallenge,
    #[error("scalar challenge must be nonzero")]
    ZeroChallenge,
    #[error("challenge has {got} bits, expected {expected}")]
    BadChallengeLength { expected: usize, got: usize },
    #[error("x·r + w vanishes mod p; prover aborts")]
    ZeroExponent,
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    #[error("key is for {found}, session runs {expected}")]
    KeyMismatch { expected: SchemeId, found: SchemeId },
    #[error("no non-degenerate draw after {MAX_REDRAWS} attempts")]
    DegenerateSuite,
    #[error(transparent)]
    Hash(#[from] HashError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl SchemeError {
    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        SchemeError::ProtocolViolation(msg.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    Blsid,
    Cdhid,
    Sdhid,
    Owfid,
    Scl,
    Hls,
}

impl SchemeId {
    pub const ALL: [SchemeId; 6] =
        [SchemeId::Blsid, SchemeId::Cdhid, SchemeId::Sdhid, SchemeId::Owfid, SchemeId::Scl, SchemeId::Hls];

    pub fn name(&self) -> &'static str {
        match self {
            SchemeId::Blsid => "BLSID",
            SchemeId::Cdhid => "CDHID",
            SchemeId::Sdhid => "SDHID",
            SchemeId::Owfid => "OWFID",
            SchemeId::Scl => "SCL",
            SchemeId::Hls => "HLS",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
    }

    pub fn tag(&self) -> u8 {
        *self as u8 + 1
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        Self::ALL.get((tag as usize).checked_sub(1)?).copied()
    }

    /// Whether the prover opens with a commitment.
    pub fn has_commitment(&self) -> bool {
        matches!(self, SchemeId::Owfid | SchemeId::Scl | SchemeId::Hls)
    }

    pub fn commitment_shape(&self) -> &'static [Kind] {
        match self {
            SchemeId::Owfid | SchemeId::Hls => &[Kind::G2],
            SchemeId::Scl => &[Kind::G1],
            _ => &[],
        }
    }

    pub fn challenge_shape(&self) -> &'static [Kind] {
        match self {
            SchemeId::Blsid => &[Kind::Bits],
            SchemeId::Cdhid => &[Kind::G1],
            _ => &[Kind::Scalar],
        }
    }

    pub fn response_shape(&self) -> &'static [Kind] {
        match self {
            SchemeId::Sdhid | SchemeId::Owfid => &[Kind::G1, Kind::Scalar],
            _ => &[Kind::G1],
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Type of one message component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    G1,
    G2,
    Scalar,
    Bits,
}

/// One element carried in a protocol message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component<B: Backend> {
    G1(B::G1),
    G2(B::G2),
    Scalar(Scalar),
    Bits(BitString),
}

impl<B: Backend> Component<B> {
    pub fn kind(&self) -> Kind {
        match self {
            Component::G1(_) => Kind::G1,
            Component::G2(_) => Kind::G2,
            Component::Scalar(_) => Kind::Scalar,
            Component::Bits(_) => Kind::Bits,
        }
    }
}

pub type Message<B> = Vec<Component<B>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }

    pub fn is_accept(&self) -> bool {
        *self == Decision::Accept
    }

    pub fn name(&self) -> &'static str {
        match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        }
    }
}

/// BLSID challenge length and hash.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    pub challenge_bits: usize,
    pub hash: HashMode,
}

impl SchemeParams {
    /// `n = ⌈log2 p⌉` and the backend's default hash.
    pub fn default_for(order: u64, kind: BackendKind) -> Self {
        let bits = 64 - (order - 1).leading_zeros() as usize;
        Self { challenge_bits: bits, hash: HashMode::default_for(kind) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PublicKey<B: Backend> {
    Blsid(blsid::BlsidPublic<B>),
    Cdhid(cdhid::CdhidPublic<B>),
    Sdhid(sdhid::SdhidPublic<B>),
    Owfid(owfid::OwfidPublic<B>),
    Scl(scl::SclPublic<B>),
    Hls(hls::HlsPublic<B>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SecretKey<B: Backend> {
    Blsid(blsid::BlsidSecret),
    Cdhid(cdhid::CdhidSecret),
    Sdhid(sdhid::SdhidSecret),
    Owfid(owfid::OwfidSecret<B>),
    Scl(scl::SclSecret),
    Hls(hls::HlsSecret<B>),
}

impl<B: Backend> PublicKey<B> {
    pub fn scheme(&self) -> SchemeId {
        match self {
            PublicKey::Blsid(_) => SchemeId::Blsid,
            PublicKey::Cdhid(_) => SchemeId::Cdhid,
            PublicKey::Sdhid(_) => SchemeId::Sdhid,
            PublicKey::Owfid(_) => SchemeId::Owfid,
            PublicKey::Scl(_) => SchemeId::Scl,
            PublicKey::Hls(_) => SchemeId::Hls,
        }
    }

    /// Challenge bit-length when the scheme uses bit-string challenges.
    pub fn challenge_bits(&self) -> usize {
        match self {
            PublicKey::Blsid(pk) => pk.params.challenge_bits,
            _ => 0,
        }
    }
}

impl<B: Backend> SecretKey<B> {
    pub fn scheme(&self) -> SchemeId {
        match self {
            SecretKey::Blsid(_) => SchemeId::Blsid,
            SecretKey::Cdhid(_) => SchemeId::Cdhid,
            SecretKey::Sdhid(_) => SchemeId::Sdhid,
            SecretKey::Owfid(_) => SchemeId::Owfid,
            SecretKey::Scl(_) => SchemeId::Scl,
            SecretKey::Hls(_) => SchemeId::Hls,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeKeyPair<B: Backend> {
    pub public: PublicKey<B>,
    pub secret: SecretKey<B>,
}

impl<B: Backend> SchemeKeyPair<B> {
    pub fn scheme(&self) -> SchemeId {
        self.public.scheme()
    }

    /// Checks the variant's defining key equation by evaluating pairings.
    pub fn is_consistent(&self, suite: &GroupSuite<B>) -> bool {
        let g = suite.generator();
        match (&self.public, &self.secret) {
            (PublicKey::Blsid(pk), SecretKey::Blsid(sk)) => pk.v == suite.g1_pow_raw(&g, &sk.x),
            (PublicKey::Cdhid(pk), SecretKey::Cdhid(sk)) => pk.v == suite.g1_pow_raw(&g, &sk.x),
            (PublicKey::Sdhid(pk), SecretKey::Sdhid(sk)) => {
                pk.u == suite.g1_pow_raw(&g, &sk.x)
                    && pk.v == suite.g1_pow_raw(&g, &sk.y)
                    && pk.z == suite.gt_generator()
            }
            (PublicKey::Owfid(pk), SecretKey::Owfid(sk)) => owfid::key_equation_holds(suite, pk, sk),
            (PublicKey::Scl(pk), SecretKey::Scl(sk)) => {
                pk.v == suite.g1_pow_raw(&pk.g, &sk.x) && pk.z == suite.pair_raw(&pk.g, &pk.g)
            }
            (PublicKey::Hls(pk), SecretKey::Hls(sk)) => {
                pk.v == suite.pair_raw(&pk.p, &sk.q)
                    && pk.z == suite.pair_raw(&pk.p, &pk.p)
                    && suite.pair_raw(&pk.p, &sk.q) == suite.pair_raw(&pk.r, &pk.s)
            }
            _ => false,
        }
    }
}

/// Key generation with default [`SchemeParams`].
pub fn keygen<B: Backend, R: Rng + ?Sized>(
    scheme: SchemeId,
    suite: &GroupSuite<B>,
    rng: &mut R,
) -> Result<SchemeKeyPair<B>, SchemeError> {
    let params = SchemeParams::default_for(suite.order(), suite.kind());
    keygen_with_params(scheme, suite, params, rng)
}

pub fn keygen_with_params<B: Backend, R: Rng + ?Sized>(
    scheme: SchemeId,
    suite: &GroupSuite<B>,
    params: SchemeParams,
    rng: &mut R,
) -> Result<SchemeKeyPair<B>, SchemeError> {
    Ok(match scheme {
        SchemeId::Blsid => blsid::keygen(suite, params, rng)?,
        SchemeId::Cdhid => cdhid::keygen(suite, rng),
        SchemeId::Sdhid => sdhid::keygen(suite, rng),
        SchemeId::Owfid => owfid::keygen(suite, rng),
        SchemeId::Scl => scl::keygen(suite, rng),
        SchemeId::Hls => hls::keygen(suite, rng),
    })
}
