//! Scripted attackers for positive controls.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::algebra::{DiscreteLog, GroupSuite};
use crate::id::{
    blsid, cdhid, hls, owfid, sample_challenge, scl, sdhid, Component, Kind, Message, MessageCodec, Prover, PublicKey,
    SchemeId, SchemeKeyPair, MAX_REDRAWS,
};

use super::{AttackerPair, LabError, ProverOracle};

/// A valid key pair for `pk`, found with discrete logarithms. OWFID has
/// `p` valid secrets per public key; `rng` picks one.
pub fn recover_key<B: DiscreteLog, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    pk: &PublicKey<B>,
    rng: &mut R,
) -> SchemeKeyPair<B> {
    let backend = suite.backend();
    let log1 = |a: &B::G1| suite.scalar(backend.dlog_g1(a).expect("element of the prime-order subgroup"));
    let log2 = |x: &B::G2| suite.scalar(backend.dlog_g2(x).expect("element of the prime-order subgroup"));
    let ratio = |num: &B::G1, den: &B::G1| log1(num).div(&log1(den)).expect("base is a generator");
    match pk {
        PublicKey::Blsid(pk) => blsid::key_from_secret(suite, pk.params, log1(&pk.v)),
        PublicKey::Cdhid(pk) => cdhid::key_from_secret(suite, log1(&pk.v)),
        PublicKey::Sdhid(pk) => sdhid::key_from_secret(suite, log1(&pk.u), log1(&pk.v)),
        PublicKey::Owfid(pk) => {
            let s = suite.random_scalar(rng);
            let target = suite.g2_inv(&suite.g2_mul(&pk.v, &suite.g2_pow_raw(&pk.y, &s)));
            let q = log2(&target).div(&log1(&pk.p)).expect("P is a generator");
            let q = suite.g1_pow_raw(&suite.generator(), &q);
            owfid::key_from_parts(suite, pk.p.clone(), pk.y.clone(), q, s)
        }
        PublicKey::Scl(pk) => scl::key_from_parts(suite, pk.g.clone(), ratio(&pk.v, &pk.g)),
        PublicKey::Hls(pk) => hls::key_from_parts(suite, pk.p.clone(), ratio(&pk.r, &pk.p), ratio(&pk.s, &pk.p)),
    }
}

/// Uniformly random components in the scheme's response shape.
pub fn garbage_response<B: crate::algebra::Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    scheme: SchemeId,
    rng: &mut R,
) -> Message<B> {
    random_message(suite, scheme.response_shape(), rng)
}

pub(crate) fn random_message<B: crate::algebra::Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    shape: &[Kind],
    rng: &mut R,
) -> Message<B> {
    shape
        .iter()
        .map(|k| match k {
            Kind::G1 => Component::G1(suite.random_g1(rng)),
            Kind::G2 => Component::G2(suite.random_g2(rng)),
            Kind::Scalar => Component::Scalar(suite.random_scalar(rng)),
            Kind::Bits => unreachable!("no response carries bit strings"),
        })
        .collect()
}

/// Recovers a valid key from the public key, then answers each challenge
/// correctly with probability `eps`, independently per (coins, challenge)
/// cell. Otherwise it sends random components.
///
/// The cheating verifier runs `sessions` interactions with distinct
/// challenges and hands the encoded responses on as `T_α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScriptedAttacker {
    pub eps: f64,
    pub sessions: u64,
}

impl ScriptedAttacker {
    pub fn new(eps: f64, sessions: u64) -> Self {
        assert!((0.0..=1.0).contains(&eps), "eps must be a probability");
        Self { eps, sessions }
    }

    pub fn perfect(sessions: u64) -> Self {
        Self::new(1.0, sessions)
    }
}

impl<B: DiscreteLog> AttackerPair<B> for ScriptedAttacker {
    fn cheating_verifier(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &PublicKey<B>,
        prover: &mut ProverOracle<'_, B>,
        coins: &mut ChaCha20Rng,
    ) -> Result<Vec<u8>, LabError> {
        let codec = MessageCodec::new(suite.backend(), pk.challenge_bits());
        let mut asked: Vec<Vec<u8>> = Vec::new();
        let mut state = Vec::new();
        for _ in 0..self.sessions {
            prover.open()?;
            let mut challenge = sample_challenge(suite, pk, coins)?;
            for _ in 0..MAX_REDRAWS {
                if !asked.contains(&codec.encode(&challenge)) {
                    break;
                }
                challenge = sample_challenge(suite, pk, coins)?;
            }
            asked.push(codec.encode(&challenge));
            state.extend(codec.encode(&prover.respond(&challenge)?));
        }
        Ok(state)
    }

    fn cheating_prover(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &PublicKey<B>,
        _state: &[u8],
        channel: &mut dyn FnMut(Message<B>) -> Message<B>,
        coins: &mut ChaCha20Rng,
    ) -> Message<B> {
        let key = recover_key(suite, pk, coins);
        let luck: [u8; 32] = coins.gen();
        let mut prover = Prover::new(suite, &key, &mut *coins);
        let commitment = prover.commit().ok().flatten().unwrap_or_default();
        let challenge = channel(commitment);
        let codec = MessageCodec::new(suite.backend(), pk.challenge_bits());
        let digest: [u8; 32] =
            Sha256::new().chain_update(luck).chain_update(codec.encode(&challenge)).finalize().into();
        if ChaCha20Rng::from_seed(digest).gen_bool(self.eps) {
            if let Ok(response) = prover.respond(&challenge) {
                return response;
            }
        }
        garbage_response(suite, pk.scheme(), coins)
    }
}
