//! Acceptance rates of provers that do not hold the key.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, GroupSuite};
use crate::id::session::session_rngs;
use crate::id::{
    blsid, cdhid, hls, keygen, owfid, sample_challenge, scl, sdhid, verify_messages, Decision, Prover, PublicKey,
    SchemeError, SchemeId, SchemeKeyPair, SecretKey, Verifier,
};

use super::attackers::{garbage_response, random_message};

/// Accepting sessions out of `trials` for a prover that sends uniformly
/// random commitments and responses.
pub fn random_response_accepts<B: Backend>(
    scheme: SchemeId,
    suite: &GroupSuite<B>,
    trials: u64,
    seed: u64,
) -> Result<u64, SchemeError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let key = keygen(scheme, suite, &mut rng)?;
    let mut accepts = 0;
    for _ in 0..trials {
        let commitment = random_message(suite, scheme.commitment_shape(), &mut rng);
        let challenge = sample_challenge(suite, &key.public, &mut rng)?;
        let response = garbage_response(suite, scheme, &mut rng);
        accepts += verify_messages(suite, &key.public, &commitment, &challenge, &response)?.is_accept() as u64;
    }
    Ok(accepts)
}

/// A key for the same public generators as `key` with a different
/// public value.
pub fn wrong_key<B: Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    key: &SchemeKeyPair<B>,
    rng: &mut R,
) -> SchemeKeyPair<B> {
    loop {
        let delta = suite.random_nonzero_scalar(rng);
        let other = match (&key.public, &key.secret) {
            (PublicKey::Blsid(pk), SecretKey::Blsid(sk)) => blsid::key_from_secret(suite, pk.params, sk.x + delta),
            (PublicKey::Cdhid(_), SecretKey::Cdhid(sk)) => cdhid::key_from_secret(suite, sk.x + delta),
            (PublicKey::Sdhid(_), SecretKey::Sdhid(sk)) => {
                sdhid::key_from_secret(suite, sk.x + delta, sk.y + suite.random_scalar(rng))
            }
            (PublicKey::Owfid(pk), _) => {
                owfid::key_from_parts(suite, pk.p.clone(), pk.y.clone(), suite.random_g1(rng), suite.random_scalar(rng))
            }
            (PublicKey::Scl(pk), SecretKey::Scl(sk)) => scl::key_from_parts(suite, pk.g.clone(), sk.x + delta),
            (PublicKey::Hls(pk), _) => hls::key_from_parts(
                suite,
                pk.p.clone(),
                suite.random_nonzero_scalar(rng),
                suite.random_nonzero_scalar(rng),
            ),
            _ => unreachable!("key pair mixes schemes"),
        };
        let differs = match (&key.public, &other.public) {
            (PublicKey::Hls(a), PublicKey::Hls(b)) => a.v != b.v,
            (a, b) => a != b,
        };
        if differs {
            return other;
        }
    }
}

/// Accepting sessions out of `trials` for an honest prover algorithm run
/// with [`wrong_key`] against the verifier's real public key.
pub fn wrong_key_accepts<B: Backend>(
    scheme: SchemeId,
    suite: &GroupSuite<B>,
    trials: u64,
    seed: u64,
) -> Result<u64, SchemeError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let key = keygen(scheme, suite, &mut rng)?;
    let other = wrong_key(suite, &key, &mut rng);
    let mut accepts = 0;
    for _ in 0..trials {
        let (prng, vrng) = session_rngs(rng.gen());
        let mut prover = Prover::new(suite, &other, prng);
        let mut verifier = Verifier::new(suite, &key.public, vrng);
        if let Some(c) = prover.commit()? {
            verifier.receive_commitment(&c)?;
        }
        let challenge = verifier.challenge()?;
        let decision = match prover.respond(&challenge) {
            Ok(r) => verifier.decide(&r)?,
            Err(_) => Decision::Reject,
        };
        accepts += decision.is_accept() as u64;
    }
    Ok(accepts)
}

/// Whether a wrong-key prover's acceptance is impossible rather than
/// merely unlikely: the response is a function of the secret and the
/// challenge alone, so a different secret never produces the right one.
pub fn wrong_key_never_accepted(scheme: SchemeId) -> bool {
    matches!(scheme, SchemeId::Blsid | SchemeId::Cdhid | SchemeId::Scl | SchemeId::Hls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Transparent;
    use crate::stats::within_3sigma;

    #[test]
    fn random_responses_near_one_over_p() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        for scheme in SchemeId::ALL {
            let n = random_response_accepts(scheme, &suite, 5000, scheme.tag() as u64).unwrap();
            assert!(within_3sigma(n, 5000, 1.0 / 1009.0), "{scheme}: {n}");
        }
    }

    #[test]
    fn wrong_keys() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        for scheme in SchemeId::ALL {
            let n = wrong_key_accepts(scheme, &suite, 2000, 40 + scheme.tag() as u64).unwrap();
            if wrong_key_never_accepted(scheme) {
                assert_eq!(n, 0, "{scheme}");
            } else {
                assert!(within_3sigma(n, 2000, 1.0 / 1009.0), "{scheme}: {n}");
            }
        }
    }
}
