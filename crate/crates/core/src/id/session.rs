//! Message-level prover and verifier state machines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, GroupSuite, Role, Scalar};
use crate::record::{Record, RecordError};
use crate::sig::hash::BitString;

use super::owfid::OwfidWitness;
use super::{
    blsid, cdhid, hls, owfid, scl, sdhid, Component, Decision, Kind, Message, MessageCodec, PublicKey, SchemeError,
    SchemeId, SchemeKeyPair, SecretKey,
};

/// Per-session prover and verifier coin streams derived from one seed.
pub fn session_rngs(seed: u64) -> (ChaCha20Rng, ChaCha20Rng) {
    let mut prover = ChaCha20Rng::seed_from_u64(seed);
    prover.set_stream(1);
    let mut verifier = ChaCha20Rng::seed_from_u64(seed);
    verifier.set_stream(2);
    (prover, verifier)
}

fn check_shape<B: Backend>(what: &str, shape: &[Kind], msg: &[Component<B>]) -> Result<(), SchemeError> {
    if msg.len() != shape.len() || msg.iter().zip(shape).any(|(c, k)| c.kind() != *k) {
        return Err(SchemeError::violation(format!("malformed {what}")));
    }
    Ok(())
}

fn g1_at<B: Backend>(msg: &[Component<B>], i: usize) -> &B::G1 {
    match &msg[i] {
        Component::G1(a) => a,
        _ => unreachable!("shape checked"),
    }
}

fn g2_at<B: Backend>(msg: &[Component<B>], i: usize) -> &B::G2 {
    match &msg[i] {
        Component::G2(a) => a,
        _ => unreachable!("shape checked"),
    }
}

fn scalar_at<B: Backend>(msg: &[Component<B>], i: usize) -> &Scalar {
    match &msg[i] {
        Component::Scalar(s) => s,
        _ => unreachable!("shape checked"),
    }
}

fn bits_at<B: Backend>(msg: &[Component<B>], i: usize) -> &BitString {
    match &msg[i] {
        Component::Bits(m) => m,
        _ => unreachable!("shape checked"),
    }
}

/// The verifier's decision on a complete set of messages.
///
/// Shape errors are protocol violations; everything else is a plain
/// accept/reject from the scheme's verification equation.
pub fn verify_messages<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &PublicKey<B>,
    commitment: &[Component<B>],
    challenge: &[Component<B>],
    response: &[Component<B>],
) -> Result<Decision, SchemeError> {
    let scheme = pk.scheme();
    check_shape("commitment", scheme.commitment_shape(), commitment)?;
    check_shape("challenge", scheme.challenge_shape(), challenge)?;
    check_shape("response", scheme.response_shape(), response)?;
    let (c, ch, r) = (commitment, challenge, response);
    Ok(match pk {
        PublicKey::Blsid(pk) => blsid::verify(suite, pk, bits_at(ch, 0), g1_at(r, 0)),
        PublicKey::Cdhid(pk) => cdhid::verify(suite, pk, g1_at(ch, 0), g1_at(r, 0)),
        PublicKey::Sdhid(pk) => sdhid::verify(suite, pk, scalar_at(ch, 0), g1_at(r, 0), scalar_at(r, 1)),
        PublicKey::Owfid(pk) => owfid::verify(suite, pk, g2_at(c, 0), scalar_at(ch, 0), g1_at(r, 0), scalar_at(r, 1)),
        PublicKey::Scl(pk) => scl::verify(suite, pk, g1_at(c, 0), scalar_at(ch, 0), g1_at(r, 0)),
        PublicKey::Hls(pk) => hls::verify(suite, pk, g2_at(c, 0), scalar_at(ch, 0), g1_at(r, 0)),
    })
}

/// Draws a challenge from the honest verifier's distribution.
pub fn sample_challenge<B: Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    pk: &PublicKey<B>,
    rng: &mut R,
) -> Result<Message<B>, SchemeError> {
    let c = match pk {
        PublicKey::Blsid(pk) => Component::Bits(blsid::sample_challenge(suite, pk, rng)?),
        PublicKey::Cdhid(_) => Component::G1(cdhid::sample_challenge(suite, rng)),
        _ => Component::Scalar(suite.random_nonzero_scalar(rng)),
    };
    Ok(vec![c])
}

#[derive(Debug, Clone)]
enum Coins<B: Backend> {
    None,
    Owfid(OwfidWitness<B>),
    Scalar(Scalar),
}

#[derive(Debug, Clone)]
enum ProverState<B: Backend> {
    Start,
    AwaitChallenge(Coins<B>),
    Done,
    Aborted,
}

/// Honest prover. Operations are charged to [`Role::Prover`] and every
/// outgoing message is recorded as prover bandwidth.
pub struct Prover<'s, B: Backend, R: Rng> {
    suite: &'s GroupSuite<B>,
    key: &'s SchemeKeyPair<B>,
    rng: R,
    state: ProverState<B>,
    redraws: u32,
}

impl<'s, B: Backend, R: Rng> Prover<'s, B, R> {
    pub fn new(suite: &'s GroupSuite<B>, key: &'s SchemeKeyPair<B>, rng: R) -> Self {
        Self { suite, key, rng, state: ProverState::Start, redraws: 0 }
    }

    pub fn scheme(&self) -> SchemeId {
        self.key.scheme()
    }

    /// Nonces the SDHID prover discarded so far.
    pub fn redraws(&self) -> u32 {
        self.redraws
    }

    pub fn is_aborted(&self) -> bool {
        matches!(self.state, ProverState::Aborted)
    }

    fn codec(&self) -> MessageCodec<'s, B> {
        MessageCodec::new(self.suite.backend(), self.key.public.challenge_bits())
    }

    fn abort(&mut self, err: SchemeError) -> SchemeError {
        self.state = ProverState::Aborted;
        err
    }

    /// First move. Returns `None` for two-move schemes, which still must
    /// call this before [`Prover::respond`].
    pub fn commit(&mut self) -> Result<Option<Message<B>>, SchemeError> {
        if !matches!(self.state, ProverState::Start) {
            return Err(self.abort(SchemeError::violation("commitment requested twice")));
        }
        let suite = self.suite;
        let _role = suite.enter(Role::Prover);
        let (msg, coins) = match &self.key.public {
            PublicKey::Owfid(pk) => {
                let (x, w) = owfid::commit(suite, pk, &mut self.rng);
                (Some(vec![Component::G2(x)]), Coins::Owfid(w))
            }
            PublicKey::Scl(pk) => {
                let (tau, w) = scl::commit(suite, pk, &mut self.rng);
                (Some(vec![Component::G1(tau)]), Coins::Scalar(w))
            }
            PublicKey::Hls(pk) => {
                let (w, r) = hls::commit(suite, pk, &mut self.rng);
                (Some(vec![Component::G2(w)]), Coins::Scalar(r))
            }
            _ => (None, Coins::None),
        };
        if let Some(m) = &msg {
            suite.record_sent(Role::Prover, self.codec().bandwidth(m));
        }
        self.state = ProverState::AwaitChallenge(coins);
        Ok(msg)
    }

    pub fn respond(&mut self, challenge: &[Component<B>]) -> Result<Message<B>, SchemeError> {
        let coins = match std::mem::replace(&mut self.state, ProverState::Aborted) {
            ProverState::AwaitChallenge(c) => c,
            ProverState::Start => return Err(SchemeError::violation("challenge before commitment")),
            _ => return Err(SchemeError::violation("challenge after session end")),
        };
        check_shape("challenge", self.scheme().challenge_shape(), challenge)?;
        let suite = self.suite;
        let _role = suite.enter(Role::Prover);
        let msg = match (&self.key.public, &self.key.secret, &coins) {
            (PublicKey::Blsid(pk), SecretKey::Blsid(sk), _) => {
                vec![Component::G1(blsid::respond(suite, pk, sk, bits_at(challenge, 0))?)]
            }
            (PublicKey::Cdhid(_), SecretKey::Cdhid(sk), _) => {
                vec![Component::G1(cdhid::respond(suite, sk, g1_at(challenge, 0))?)]
            }
            (PublicKey::Sdhid(_), SecretKey::Sdhid(sk), _) => {
                let resp = sdhid::respond(suite, sk, scalar_at(challenge, 0), &mut self.rng)?;
                self.redraws += resp.redraws;
                vec![Component::G1(resp.sigma), Component::Scalar(resp.r)]
            }
            (PublicKey::Owfid(_), SecretKey::Owfid(sk), Coins::Owfid(w)) => {
                let (t, a) = owfid::respond(suite, sk, w, scalar_at(challenge, 0))?;
                vec![Component::G1(t), Component::Scalar(a)]
            }
            (PublicKey::Scl(pk), SecretKey::Scl(sk), Coins::Scalar(w)) => {
                vec![Component::G1(scl::respond(suite, pk, sk, w, scalar_at(challenge, 0))?)]
            }
            (PublicKey::Hls(pk), SecretKey::Hls(sk), Coins::Scalar(r)) => {
                vec![Component::G1(hls::respond(suite, pk, sk, r, scalar_at(challenge, 0))?)]
            }
            _ => return Err(SchemeError::violation("key pair does not match one scheme")),
        };
        suite.record_sent(Role::Prover, self.codec().bandwidth(&msg));
        self.state = ProverState::Done;
        Ok(msg)
    }
}

#[derive(Debug, Clone)]
enum VerifierState<B: Backend> {
    AwaitCommitment,
    ReadyToChallenge(Message<B>),
    AwaitResponse { commitment: Message<B>, challenge: Message<B> },
    Decided(Decision),
    Aborted,
}

/// Honest verifier. Any out-of-order or malformed message moves it to a
/// terminal rejecting state.
pub struct Verifier<'s, B: Backend, R: Rng> {
    suite: &'s GroupSuite<B>,
    pk: &'s PublicKey<B>,
    rng: R,
    state: VerifierState<B>,
}

impl<'s, B: Backend, R: Rng> Verifier<'s, B, R> {
    pub fn new(suite: &'s GroupSuite<B>, pk: &'s PublicKey<B>, rng: R) -> Self {
        let state = if pk.scheme().has_commitment() {
            VerifierState::AwaitCommitment
        } else {
            VerifierState::ReadyToChallenge(Vec::new())
        };
        Self { suite, pk, rng, state }
    }

    pub fn scheme(&self) -> SchemeId {
        self.pk.scheme()
    }

    /// Final decision; aborted sessions count as rejections.
    pub fn decision(&self) -> Option<Decision> {
        match self.state {
            VerifierState::Decided(d) => Some(d),
            VerifierState::Aborted => Some(Decision::Reject),
            _ => None,
        }
    }

    fn abort(&mut self, msg: &str) -> SchemeError {
        self.state = VerifierState::Aborted;
        SchemeError::violation(msg)
    }

    pub fn receive_commitment(&mut self, commitment: &[Component<B>]) -> Result<(), SchemeError> {
        if !matches!(self.state, VerifierState::AwaitCommitment) {
            return Err(self.abort("unexpected commitment"));
        }
        if check_shape::<B>("commitment", self.scheme().commitment_shape(), commitment).is_err() {
            return Err(self.abort("malformed commitment"));
        }
        self.state = VerifierState::ReadyToChallenge(commitment.to_vec());
        Ok(())
    }

    pub fn challenge(&mut self) -> Result<Message<B>, SchemeError> {
        let commitment = match std::mem::replace(&mut self.state, VerifierState::Aborted) {
            VerifierState::ReadyToChallenge(c) => c,
            VerifierState::AwaitCommitment => return Err(SchemeError::violation("challenge before commitment")),
            _ => return Err(SchemeError::violation("challenge requested twice")),
        };
        let suite = self.suite;
        let _role = suite.enter(Role::Verifier);
        let challenge = sample_challenge(suite, self.pk, &mut self.rng)?;
        let codec = MessageCodec::new(suite.backend(), self.pk.challenge_bits());
        suite.record_sent(Role::Verifier, codec.bandwidth(&challenge));
        self.state = VerifierState::AwaitResponse { commitment, challenge: challenge.clone() };
        Ok(challenge)
    }

    pub fn decide(&mut self, response: &[Component<B>]) -> Result<Decision, SchemeError> {
        let (commitment, challenge) = match std::mem::replace(&mut self.state, VerifierState::Aborted) {
            VerifierState::AwaitResponse { commitment, challenge } => (commitment, challenge),
            _ => return Err(SchemeError::violation("response out of order")),
        };
        let _role = self.suite.enter(Role::Verifier);
        let d = verify_messages(self.suite, self.pk, &commitment, &challenge, response)?;
        self.state = VerifierState::Decided(d);
        Ok(d)
    }
}

/// The three messages of a session and the verifier's decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript<B: Backend> {
    pub scheme: SchemeId,
    /// Empty for two-move schemes.
    pub commitment: Message<B>,
    pub challenge: Message<B>,
    /// Empty when the prover aborted.
    pub response: Message<B>,
    pub decision: Decision,
    /// Seed of the prover and verifier coin streams.
    pub seed: u64,
}

impl<B: Backend> Transcript<B> {
    /// Re-runs verification on the recorded messages, uncounted.
    pub fn replay(&self, suite: &GroupSuite<B>, pk: &PublicKey<B>) -> Result<Decision, SchemeError> {
        if pk.scheme() != self.scheme {
            return Err(SchemeError::KeyMismatch { expected: self.scheme, found: pk.scheme() });
        }
        if self.response.is_empty() {
            return Ok(Decision::Reject);
        }
        let quiet = suite.fork();
        verify_messages(&quiet, pk, &self.commitment, &self.challenge, &self.response)
    }

    pub fn to_record(&self, codec: &MessageCodec<'_, B>) -> Record {
        let mut rec = Record::new();
        rec.push("scheme", self.scheme.name());
        rec.push("seed", self.seed.to_string());
        if self.scheme.has_commitment() {
            rec.push("commitment", hex::encode(codec.encode(&self.commitment)));
        }
        rec.push("challenge", hex::encode(codec.encode(&self.challenge)));
        if self.response.is_empty() {
            rec.push("response", "-");
        } else {
            rec.push("response", hex::encode(codec.encode(&self.response)));
        }
        rec.push("decision", self.decision.name());
        rec
    }

    pub fn from_record(rec: &Record, codec: &MessageCodec<'_, B>) -> Result<Self, RecordError> {
        let name = rec.require("scheme")?;
        let scheme = SchemeId::from_name(name).ok_or_else(|| RecordError::invalid("scheme", name))?;
        let commitment = if scheme.has_commitment() {
            codec.decode(scheme.commitment_shape(), &rec.parse_hex("commitment")?)?
        } else {
            Vec::new()
        };
        let challenge = codec.decode(scheme.challenge_shape(), &rec.parse_hex("challenge")?)?;
        let response = if rec.require("response")? == "-" {
            Vec::new()
        } else {
            codec.decode(scheme.response_shape(), &rec.parse_hex("response")?)?
        };
        let decision = match rec.require("decision")? {
            "accept" => Decision::Accept,
            "reject" => Decision::Reject,
            other => return Err(RecordError::invalid("decision", other)),
        };
        let seed = rec.parse_u64("seed")?;
        Ok(Self { scheme, commitment, challenge, response, decision, seed })
    }
}

/// A completed in-process session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionOutcome<B: Backend> {
    pub transcript: Transcript<B>,
    /// SDHID nonce redraws.
    pub redraws: u32,
}

/// Runs one honest session with coins derived from `seed`.
pub fn run_session<B: Backend>(
    scheme: SchemeId,
    key: &SchemeKeyPair<B>,
    suite: &GroupSuite<B>,
    seed: u64,
) -> Result<Transcript<B>, SchemeError> {
    run_session_detailed(scheme, key, suite, seed).map(|o| o.transcript)
}

pub fn run_session_detailed<B: Backend>(
    scheme: SchemeId,
    key: &SchemeKeyPair<B>,
    suite: &GroupSuite<B>,
    seed: u64,
) -> Result<SessionOutcome<B>, SchemeError> {
    if key.scheme() != scheme {
        return Err(SchemeError::KeyMismatch { expected: scheme, found: key.scheme() });
    }
    let (prng, vrng) = session_rngs(seed);
    let mut prover = Prover::new(suite, key, prng);
    let mut verifier = Verifier::new(suite, &key.public, vrng);
    let commitment = prover.commit()?.unwrap_or_default();
    if scheme.has_commitment() {
        verifier.receive_commitment(&commitment)?;
    }
    let challenge = verifier.challenge()?;
    let (response, decision) = match prover.respond(&challenge) {
        Ok(r) => {
            let d = verifier.decide(&r)?;
            (r, d)
        }
        // SCL abort: the verifier sees no response and rejects
        Err(SchemeError::ZeroExponent) => (Vec::new(), Decision::Reject),
        Err(e) => return Err(e),
    };
    Ok(SessionOutcome {
        transcript: Transcript { scheme, commitment, challenge, response, decision, seed },
        redraws: prover.redraws(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{OpCounts, Transparent};
    use crate::curve::{CurveParams, TateBackend};
    use crate::id::keygen;

    #[test]
    fn honest_sessions_accept_on_both_backends() {
        let t = GroupSuite::new(Transparent::new(1009).unwrap());
        let c = GroupSuite::new(TateBackend::new(CurveParams::q523()));
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for scheme in SchemeId::ALL {
            for seed in 0..20 {
                let kp = keygen(scheme, &t, &mut rng).unwrap();
                assert!(kp.is_consistent(&t));
                assert_eq!(run_session(scheme, &kp, &t, seed).unwrap().decision, Decision::Accept);
            }
            for seed in 0..3 {
                let kp = keygen(scheme, &c, &mut rng).unwrap();
                assert!(kp.is_consistent(&c));
                let tr = run_session(scheme, &kp, &c, seed).unwrap();
                assert_eq!(tr.decision, Decision::Accept, "{scheme} on curve");
                assert_eq!(tr.replay(&c, &kp.public).unwrap(), Decision::Accept);
            }
        }
    }

    #[test]
    fn sessions_are_deterministic_in_seed() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for scheme in SchemeId::ALL {
            let kp = keygen(scheme, &suite, &mut rng).unwrap();
            let a = run_session(scheme, &kp, &suite, 77).unwrap();
            assert_eq!(a, run_session(scheme, &kp, &suite, 77).unwrap());
        }
    }

    #[test]
    fn out_of_order_messages_are_violations() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let kp = keygen(SchemeId::Scl, &suite, &mut rng).unwrap();
        let (prng, vrng) = session_rngs(1);

        let mut v = Verifier::new(&suite, &kp.public, vrng.clone());
        assert!(matches!(v.challenge(), Err(SchemeError::ProtocolViolation(_))));
        assert_eq!(v.decision(), Some(Decision::Reject));

        let mut v = Verifier::new(&suite, &kp.public, vrng.clone());
        let mut p = Prover::new(&suite, &kp, prng.clone());
        let com = p.commit().unwrap().unwrap();
        v.receive_commitment(&com).unwrap();
        assert!(matches!(v.receive_commitment(&com), Err(SchemeError::ProtocolViolation(_))));
        assert_eq!(v.decision(), Some(Decision::Reject));

        let mut p = Prover::new(&suite, &kp, prng);
        let ch = vec![Component::Scalar(suite.scalar(3))];
        assert!(matches!(p.respond(&ch), Err(SchemeError::ProtocolViolation(_))));
        assert!(p.is_aborted());

        let mut v = Verifier::new(&suite, &kp.public, vrng);
        v.receive_commitment(&com).unwrap();
        v.challenge().unwrap();
        let bad = vec![Component::Scalar(suite.scalar(1))];
        assert!(matches!(v.decide(&bad), Err(SchemeError::ProtocolViolation(_))));
        assert_eq!(v.decision(), Some(Decision::Reject));
    }

    #[test]
    fn role_counters_match_cost_table() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let expect = |g1, g2, pr| OpCounts { g1_exp: g1, g2_exp: g2, pairings: pr };
        let table = [
            (SchemeId::Blsid, expect(1, 0, 0), expect(0, 0, 2)),
            (SchemeId::Cdhid, expect(1, 0, 0), expect(0, 0, 2)),
            (SchemeId::Sdhid, expect(1, 0, 0), expect(2, 0, 1)),
            (SchemeId::Owfid, expect(1, 1, 1), expect(0, 2, 1)),
            (SchemeId::Scl, expect(2, 0, 0), expect(1, 0, 1)),
            (SchemeId::Hls, expect(2, 1, 0), expect(0, 1, 1)),
        ];
        for (scheme, prover, verifier) in table {
            let kp = keygen(scheme, &suite, &mut rng).unwrap();
            suite.reset_counters();
            run_session(scheme, &kp, &suite, 11).unwrap();
            let c = suite.counters();
            assert_eq!((c.prover, c.verifier), (prover, verifier), "{scheme}");
        }
    }

    #[test]
    fn transcript_record_round_trip() {
        let suite = GroupSuite::new(TateBackend::new(CurveParams::q83()));
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        for scheme in SchemeId::ALL {
            let kp = keygen(scheme, &suite, &mut rng).unwrap();
            let tr = run_session(scheme, &kp, &suite, 2).unwrap();
            let codec = MessageCodec::new(suite.backend(), kp.public.challenge_bits());
            let text = tr.to_record(&codec).to_string();
            let back = Transcript::from_record(&Record::parse(&text).unwrap(), &codec).unwrap();
            assert_eq!(back, tr);
        }
    }
}
