//! Prover oracles, attacker pairs and seeded replay.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, GroupSuite};
use crate::id::{
    sample_challenge, verify_messages, Component, Decision, Message, Prover, PublicKey, SchemeError, SchemeKeyPair,
    Transcript,
};

use super::LabError;

/// Whatever answers the cheating verifier's sessions: an honest prover, or
/// a reduction that routes challenges to its own oracles.
pub trait ProverBackend<B: Backend> {
    /// Opens a session and returns the commitment, if the scheme has one.
    fn commit(&mut self) -> Result<Option<Message<B>>, LabError>;
    fn respond(&mut self, challenge: &[Component<B>]) -> Result<Message<B>, LabError>;
}

/// Honest prover for a fixed key. Each session gets fresh coins drawn from
/// the constructor's stream.
pub struct HonestProver<'s, B: Backend> {
    suite: &'s GroupSuite<B>,
    key: &'s SchemeKeyPair<B>,
    rng: ChaCha20Rng,
    session: Option<Prover<'s, B, ChaCha20Rng>>,
}

impl<'s, B: Backend> HonestProver<'s, B> {
    pub fn new(suite: &'s GroupSuite<B>, key: &'s SchemeKeyPair<B>, rng: ChaCha20Rng) -> Self {
        Self { suite, key, rng, session: None }
    }
}

impl<B: Backend> ProverBackend<B> for HonestProver<'_, B> {
    fn commit(&mut self) -> Result<Option<Message<B>>, LabError> {
        let coins = ChaCha20Rng::seed_from_u64(self.rng.gen());
        let mut prover = Prover::new(self.suite, self.key, coins);
        let commitment = prover.commit()?;
        self.session = Some(prover);
        Ok(commitment)
    }

    fn respond(&mut self, challenge: &[Component<B>]) -> Result<Message<B>, LabError> {
        let prover = self
            .session
            .as_mut()
            .ok_or_else(|| SchemeError::ProtocolViolation("challenge before commitment".into()))?;
        Ok(prover.respond(challenge)?)
    }
}

/// Budgeted access to a [`ProverBackend`]. Opening session `q + 1` fails.
pub struct ProverOracle<'a, B: Backend> {
    inner: Box<dyn ProverBackend<B> + 'a>,
    limit: u64,
    sessions: u64,
}

impl<'a, B: Backend> ProverOracle<'a, B> {
    pub fn new(inner: impl ProverBackend<B> + 'a, limit: u64) -> Self {
        Self { inner: Box::new(inner), limit, sessions: 0 }
    }

    pub fn open(&mut self) -> Result<Option<Message<B>>, LabError> {
        if self.sessions >= self.limit {
            return Err(LabError::BudgetExceeded { oracle: "prover", limit: self.limit });
        }
        self.sessions += 1;
        self.inner.commit()
    }

    pub fn respond(&mut self, challenge: &[Component<B>]) -> Result<Message<B>, LabError> {
        self.inner.respond(challenge)
    }

    /// Sessions opened so far.
    pub fn sessions(&self) -> u64 {
        self.sessions
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

/// A cheating verifier `B` and a cheating prover `A` sharing one coin
/// stream.
///
/// Implementations must draw randomness only from `coins` and must not
/// carry state from one run into the next.
pub trait AttackerPair<B: Backend> {
    /// Interacts with the honest prover and returns the state `T_α` passed
    /// on to the cheating prover.
    fn cheating_verifier(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &PublicKey<B>,
        prover: &mut ProverOracle<'_, B>,
        coins: &mut ChaCha20Rng,
    ) -> Result<Vec<u8>, LabError>;

    /// Sends a commitment through `channel` (empty for two-move schemes),
    /// receives the challenge and returns a response.
    fn cheating_prover(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &PublicKey<B>,
        state: &[u8],
        channel: &mut dyn FnMut(Message<B>) -> Message<B>,
        coins: &mut ChaCha20Rng,
    ) -> Message<B>;
}

/// Attacker coins, simulated-prover coins and verifier coins for one seed.
pub fn attack_rngs(seed: u64) -> (ChaCha20Rng, ChaCha20Rng, ChaCha20Rng) {
    let stream = |s| {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(s);
        rng
    };
    (stream(10), stream(11), stream(12))
}

#[derive(Debug, Clone)]
pub struct AttackRun<B: Backend> {
    pub transcript: Transcript<B>,
    pub state: Vec<u8>,
    pub prover_sessions: u64,
}

/// One complete attack: `B` against `prover`, then `A` against a verifier
/// whose challenge is `challenge(commitment)`.
pub fn run_attack<B: Backend, A: AttackerPair<B> + ?Sized>(
    attacker: &mut A,
    suite: &GroupSuite<B>,
    pk: &PublicKey<B>,
    prover: &mut ProverOracle<'_, B>,
    seed: u64,
    challenge: &mut dyn FnMut(&[Component<B>]) -> Message<B>,
) -> Result<AttackRun<B>, LabError> {
    let (mut coins, _, _) = attack_rngs(seed);
    let state = attacker.cheating_verifier(suite, pk, prover, &mut coins)?;
    let mut seen: Option<(Message<B>, Message<B>)> = None;
    let response = attacker.cheating_prover(
        suite,
        pk,
        &state,
        &mut |commitment| {
            let ch = challenge(&commitment);
            seen = Some((commitment, ch.clone()));
            ch
        },
        &mut coins,
    );
    let (commitment, ch) = seen.unwrap_or_default();
    let decision = verify_messages(&suite.fork(), pk, &commitment, &ch, &response).unwrap_or(Decision::Reject);
    let transcript = Transcript { scheme: pk.scheme(), commitment, challenge: ch, response, decision, seed };
    Ok(AttackRun { transcript, state, prover_sessions: prover.sessions() })
}

/// Replays an attacker against an honest prover holding `key`, with every
/// coin fixed by the row seed and the challenge chosen by the caller.
pub struct Rewinder<'s, B: Backend> {
    suite: &'s GroupSuite<B>,
    key: SchemeKeyPair<B>,
    q: u64,
}

impl<'s, B: Backend> Rewinder<'s, B> {
    pub fn new(suite: &'s GroupSuite<B>, key: SchemeKeyPair<B>, q: u64) -> Self {
        Self { suite, key, q }
    }

    pub fn suite(&self) -> &'s GroupSuite<B> {
        self.suite
    }

    pub fn public_key(&self) -> &PublicKey<B> {
        &self.key.public
    }

    /// The run at `(seed, challenge)`.
    pub fn run<A: AttackerPair<B> + ?Sized>(
        &self,
        attacker: &mut A,
        seed: u64,
        challenge: &Message<B>,
    ) -> Result<Transcript<B>, LabError> {
        let (_, prover_coins, _) = attack_rngs(seed);
        let mut oracle = ProverOracle::new(HonestProver::new(self.suite, &self.key, prover_coins), self.q);
        let run = run_attack(attacker, self.suite, &self.key.public, &mut oracle, seed, &mut |_| challenge.clone())?;
        Ok(run.transcript)
    }

    /// The run at `seed` against an honest verifier.
    pub fn run_honest<A: AttackerPair<B> + ?Sized>(
        &self,
        attacker: &mut A,
        seed: u64,
    ) -> Result<Transcript<B>, LabError> {
        let (_, _, mut verifier_coins) = attack_rngs(seed);
        let challenge = self.sample_challenge(&mut verifier_coins)?;
        self.run(attacker, seed, &challenge)
    }

    pub fn sample_challenge<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Message<B>, LabError> {
        Ok(sample_challenge(self.suite, &self.key.public, rng)?)
    }

    /// Number of accepting runs among `sessions` honest-verifier runs.
    pub fn accepts<A: AttackerPair<B> + ?Sized>(
        &self,
        attacker: &mut A,
        sessions: u64,
        seed: u64,
    ) -> Result<u64, LabError> {
        let mut rows = ChaCha20Rng::seed_from_u64(seed);
        let mut wins = 0;
        for _ in 0..sessions {
            wins += self.run_honest(attacker, rows.gen())?.decision.is_accept() as u64;
        }
        Ok(wins)
    }

    pub fn estimate_epsilon<A: AttackerPair<B> + ?Sized>(
        &self,
        attacker: &mut A,
        sessions: u64,
        seed: u64,
    ) -> Result<f64, LabError> {
        Ok(self.accepts(attacker, sessions, seed)? as f64 / sessions as f64)
    }
}

/// Accepting runs of `attacker` against `key` with honest parties.
pub fn estimate_success<B: Backend, A: AttackerPair<B> + ?Sized>(
    attacker: &mut A,
    suite: &GroupSuite<B>,
    key: &SchemeKeyPair<B>,
    q: u64,
    trials: u64,
    seed: u64,
) -> Result<u64, LabError> {
    Rewinder::new(suite, key.clone(), q).accepts(attacker, trials, seed)
}
