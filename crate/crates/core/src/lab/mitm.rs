//! A relay that impersonates by forwarding every message to the real
//! prover.

use crate::algebra::{Backend, GroupSuite};
use crate::id::session::session_rngs;
use crate::id::{run_session, Decision, MessageCodec, Prover, SchemeKeyPair, Transcript, Verifier};

use super::LabError;

pub const MITM_NOTE: &str =
    "relay runs Peggy and Victor concurrently; the sequential attack model does not cover this attack";

#[derive(Debug, Clone)]
pub struct MitmReport<B: Backend> {
    /// What Victor saw.
    pub relayed: Transcript<B>,
    /// An honest session with the same seed.
    pub honest: Transcript<B>,
    pub flipped_bit: Option<usize>,
    pub note: &'static str,
}

/// Peggy holds `key`; Malice sits between her and Victor and forwards
/// encoded messages verbatim, optionally flipping one bit of the response.
pub fn mitm_relay_demo<B: Backend>(
    suite: &GroupSuite<B>,
    key: &SchemeKeyPair<B>,
    seed: u64,
    flip_bit: Option<usize>,
) -> Result<MitmReport<B>, LabError> {
    let scheme = key.scheme();
    let codec = MessageCodec::new(suite.backend(), key.public.challenge_bits());
    let (peggy_coins, victor_coins) = session_rngs(seed);
    let mut peggy = Prover::new(suite, key, peggy_coins);
    let mut victor = Verifier::new(suite, &key.public, victor_coins);

    let commitment = peggy.commit()?.unwrap_or_default();
    let commitment =
        codec.decode(scheme.commitment_shape(), &codec.encode(&commitment)).map_err(crate::id::SchemeError::from)?;
    if scheme.has_commitment() {
        victor.receive_commitment(&commitment)?;
    }
    let challenge = victor.challenge()?;
    let forwarded =
        codec.decode(scheme.challenge_shape(), &codec.encode(&challenge)).map_err(crate::id::SchemeError::from)?;
    let response = peggy.respond(&forwarded)?;

    let mut bytes = codec.encode(&response);
    if let Some(bit) = flip_bit {
        let bit = bit % (bytes.len() * 8);
        bytes[bit / 8] ^= 0x80 >> (bit % 8);
    }
    let (response, decision) = match codec.decode(scheme.response_shape(), &bytes) {
        Ok(r) => {
            let d = victor.decide(&r).unwrap_or(Decision::Reject);
            (r, d)
        }
        Err(_) => (Vec::new(), Decision::Reject),
    };
    let relayed = Transcript { scheme, commitment, challenge, response, decision, seed };
    let honest = run_session(scheme, key, &suite.fork(), seed)?;
    Ok(MitmReport { relayed, honest, flipped_bit: flip_bit, note: MITM_NOTE })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    use super::*;
    use crate::algebra::Transparent;
    use crate::curve::{CurveParams, TateBackend};
    use crate::id::{keygen, SchemeId};

    #[test]
    fn verbatim_relay_accepts_and_matches() {
        let t = GroupSuite::new(Transparent::new(1009).unwrap());
        let c = GroupSuite::new(TateBackend::new(CurveParams::q83()));
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for scheme in SchemeId::ALL {
            let key = keygen(scheme, &t, &mut rng).unwrap();
            let r = mitm_relay_demo(&t, &key, 5, None).unwrap();
            assert_eq!(r.relayed.decision, Decision::Accept);
            assert_eq!(r.relayed, r.honest);
            let key = keygen(scheme, &c, &mut rng).unwrap();
            let r = mitm_relay_demo(&c, &key, 5, None).unwrap();
            assert_eq!(r.relayed, r.honest);
        }
    }

    #[test]
    fn flipped_bit_rejects() {
        let t = GroupSuite::new(Transparent::new(1009).unwrap());
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for scheme in SchemeId::ALL {
            let key = keygen(scheme, &t, &mut rng).unwrap();
            for _ in 0..50 {
                let r = mitm_relay_demo(&t, &key, rng.gen(), Some(rng.gen())).unwrap();
                assert_eq!(r.relayed.decision, Decision::Reject, "{scheme}");
            }
        }
    }
}
