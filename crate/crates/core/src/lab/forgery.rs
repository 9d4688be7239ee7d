//! BLSID impersonation turned into a BLS forgery.

use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, GroupSuite};
use crate::id::blsid::{self, BlsidPublic};
use crate::id::{Component, Message, PublicKey, SchemeError, SchemeParams};
use crate::sig::hash::BitString;
use crate::sig::{Forger, Forgery, SigPublic, SigningOracle};

use super::{attack_rngs, AttackerPair, LabError, ProverBackend, ProverOracle};

/// Answers the cheating verifier's challenges with signing queries.
struct SigningProver<'o, 's, B: Backend> {
    oracle: &'o mut SigningOracle<'s, B>,
}

impl<B: Backend> ProverBackend<B> for SigningProver<'_, '_, B> {
    fn commit(&mut self) -> Result<Option<Message<B>>, LabError> {
        Ok(None)
    }

    fn respond(&mut self, challenge: &[Component<B>]) -> Result<Message<B>, LabError> {
        match challenge {
            [Component::Bits(m)] => Ok(vec![Component::G1(self.oracle.sign_bls(m)?)]),
            _ => Err(SchemeError::ProtocolViolation("malformed challenge".into()).into()),
        }
    }
}

/// Each challenge `M_i` of the cheating verifier becomes a signing query.
/// The cheating prover then faces a fresh uniform `M`, and its response
/// `τ` is output as the forgery `(M, τ)`.
pub fn blsid_forgery_reduction<B: Backend, A: AttackerPair<B> + ?Sized>(
    attacker: &mut A,
    suite: &GroupSuite<B>,
    pk: &BlsidPublic<B>,
    oracle: &mut SigningOracle<'_, B>,
    q: u64,
    seed: u64,
) -> Result<(BitString, B::G1), LabError> {
    let public = PublicKey::Blsid(pk.clone());
    let (mut coins, _, mut sim) = attack_rngs(seed);
    let state = {
        let mut prover = ProverOracle::new(SigningProver { oracle: &mut *oracle }, q);
        attacker.cheating_verifier(suite, &public, &mut prover, &mut coins)?
    };
    let msg = blsid::sample_challenge(&suite.fork(), pk, &mut sim)?;
    let response =
        attacker.cheating_prover(suite, &public, &state, &mut |_| vec![Component::Bits(msg.clone())], &mut coins);
    let tau = match response.as_slice() {
        [Component::G1(t)] => t.clone(),
        _ => return Err(LabError::AttackFailed),
    };
    if !oracle.is_fresh(&Forgery::Bls { msg: msg.clone(), sigma: tau.clone() }) {
        return Err(LabError::FreshnessCollision);
    }
    if !blsid::verify(&suite.fork(), pk, &msg, &tau).is_accept() {
        return Err(LabError::AttackFailed);
    }
    Ok((msg, tau))
}

/// [`blsid_forgery_reduction`] as a BLS forger with `n`-bit challenges.
#[derive(Debug, Clone)]
pub struct BlsidReduction<A> {
    pub attacker: A,
    pub q: u64,
    pub n: usize,
    pub collisions: u64,
    pub attack_failures: u64,
    pub other_errors: u64,
}

impl<A> BlsidReduction<A> {
    pub fn new(attacker: A, q: u64, n: usize) -> Self {
        Self { attacker, q, n, collisions: 0, attack_failures: 0, other_errors: 0 }
    }
}

impl<B: Backend, A: AttackerPair<B>> Forger<B> for BlsidReduction<A> {
    fn forge(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &SigPublic<B>,
        oracle: &mut SigningOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery<B>> {
        let SigPublic::Bls { v, mode } = pk else {
            self.other_errors += 1;
            return None;
        };
        let pk = BlsidPublic { v: v.clone(), params: SchemeParams { challenge_bits: self.n, hash: *mode } };
        match blsid_forgery_reduction(&mut self.attacker, suite, &pk, oracle, self.q, rng.gen()) {
            Ok((msg, sigma)) => Some(Forgery::Bls { msg, sigma }),
            Err(LabError::FreshnessCollision) => {
                self.collisions += 1;
                None
            }
            Err(LabError::AttackFailed) => {
                self.attack_failures += 1;
                None
            }
            Err(_) => {
                self.other_errors += 1;
                None
            }
        }
    }
}
