//! Two-step probing, OWFID witness extraction and pairing inversion by
//! rewinding.

use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};
use crate::id::owfid::{self, OwfidPublic, OwfidSecret};
use crate::id::{Component, Message, SchemeId, Transcript, MAX_REDRAWS};
use crate::stats::ceil_budget;

use super::{AttackerPair, LabError, Rewinder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeMode {
    /// `⌈1/ε⌉` probes for a row, then `⌈2/ε⌉` along it.
    Iterated,
    /// One probe for each step.
    SingleShot,
}

impl ProbeMode {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeMode::Iterated => "iterated",
            ProbeMode::SingleShot => "single-shot",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "iterated" => Some(ProbeMode::Iterated),
            "single-shot" | "single" => Some(ProbeMode::SingleShot),
            _ => None,
        }
    }

    pub fn budgets(&self, eps: f64) -> Option<(u64, u64)> {
        match self {
            ProbeMode::Iterated => Some((ceil_budget(1.0, eps)?, ceil_budget(2.0, eps)?)),
            ProbeMode::SingleShot => Some((1, 1)),
        }
    }
}

/// Looks for two accepting runs on the same coins with distinct
/// challenges.
///
/// Step one probes random `(seed, challenge)` cells until one accepts.
/// Step two keeps that seed and probes fresh challenges different from the
/// first. Iterated mode requires `ε > 2/p`.
pub fn probe_strategy<B: Backend, A: AttackerPair<B> + ?Sized>(
    rewinder: &Rewinder<'_, B>,
    attacker: &mut A,
    eps: f64,
    mode: ProbeMode,
    rng: &mut ChaCha20Rng,
) -> Result<(Transcript<B>, Transcript<B>), LabError> {
    let p = rewinder.suite().order() as f64;
    if mode == ProbeMode::Iterated && eps <= 2.0 / p {
        return Err(LabError::Precondition(format!("ε = {eps} is not above 2/p = {}", 2.0 / p)));
    }
    let (first, second) = mode.budgets(eps).ok_or_else(|| LabError::Precondition(format!("ε = {eps}")))?;

    let mut found = None;
    for _ in 0..first {
        let seed = rng.gen();
        let challenge = rewinder.sample_challenge(rng)?;
        let t = rewinder.run(attacker, seed, &challenge)?;
        if t.decision.is_accept() {
            found = Some(t);
            break;
        }
    }
    let t1 = found.ok_or(LabError::ProbeFailed)?;

    for _ in 0..second {
        let challenge = fresh_challenge(rewinder, &t1.challenge, rng)?;
        let t2 = rewinder.run(attacker, t1.seed, &challenge)?;
        if t2.decision.is_accept() {
            if t2.commitment != t1.commitment {
                return Err(LabError::MalformedTranscripts("replay changed the commitment"));
            }
            return Ok((t1, t2));
        }
    }
    Err(LabError::ProbeFailed)
}

fn fresh_challenge<B: Backend>(
    rewinder: &Rewinder<'_, B>,
    avoid: &Message<B>,
    rng: &mut ChaCha20Rng,
) -> Result<Message<B>, LabError> {
    for _ in 0..MAX_REDRAWS {
        let c = rewinder.sample_challenge(rng)?;
        if c != *avoid {
            return Ok(c);
        }
    }
    Err(LabError::Precondition("challenge space has a single element".into()))
}

/// Commitment `x`, challenge `m`, response `(T, a)`.
type OwfidParts<'t, B> = (&'t <B as Backend>::G2, &'t Scalar, &'t <B as Backend>::G1, &'t Scalar);

fn owfid_parts<B: Backend>(t: &Transcript<B>) -> Result<OwfidParts<'_, B>, LabError> {
    if t.scheme != SchemeId::Owfid {
        return Err(LabError::MalformedTranscripts("not an OWFID transcript"));
    }
    match (t.commitment.as_slice(), t.challenge.as_slice(), t.response.as_slice()) {
        ([Component::G2(x)], [Component::Scalar(m)], [Component::G1(tt), Component::Scalar(a)]) => Ok((x, m, tt, a)),
        _ => Err(LabError::MalformedTranscripts("wrong message shapes")),
    }
}

/// Computes a preimage `Z` with `e(P, Z) = y` from two accepting OWFID
/// transcripts that share a commitment, given the key `(Q*, s*)` the
/// prover was simulated with.
pub fn owfid_extractor<B: Backend>(
    suite: &GroupSuite<B>,
    t1: &Transcript<B>,
    t2: &Transcript<B>,
    simkey: &OwfidSecret<B>,
    pk: &OwfidPublic<B>,
) -> Result<B::G1, LabError> {
    let (x1, m1, big_t1, a1) = owfid_parts(t1)?;
    let (x2, m2, big_t2, a2) = owfid_parts(t2)?;
    if x1 != x2 {
        return Err(LabError::MalformedTranscripts("commitments differ"));
    }
    if m1 == m2 {
        return Err(LabError::MalformedTranscripts("challenges are equal"));
    }
    let quiet = suite.fork();
    let ok1 = owfid::verify(&quiet, pk, x1, m1, big_t1, a1).is_accept();
    if !ok1 || !owfid::verify(&quiet, pk, x2, m2, big_t2, a2).is_accept() {
        return Err(LabError::MalformedTranscripts("transcript does not verify"));
    }
    let dm = (*m1 - *m2).inv().expect("challenges differ");
    let q = quiet.g1_pow_raw(&quiet.g1_div(big_t1, big_t2), &dm);
    let s = (*a1 - *a2) * dm;
    if q == simkey.q && s == simkey.s {
        return Err(LabError::SameWitness);
    }
    let ds = (simkey.s - s)
        .inv()
        .map_err(|_| LabError::MalformedTranscripts("simulation key does not match the public key"))?;
    let z = quiet.g1_pow_raw(&quiet.g1_div(&q, &simkey.q), &ds);
    assert!(quiet.pair_raw(&pk.p, &z) == pk.y, "extracted Z must satisfy e(P, Z) = y");
    Ok(z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverterConfig {
    pub mode: ProbeMode,
    /// Attacker success rate; estimated with `pilot` sessions when absent.
    pub eps: Option<f64>,
    pub pilot: u64,
    /// Prover sessions granted to the cheating verifier.
    pub q: u64,
}

impl Default for InverterConfig {
    fn default() -> Self {
        Self { mode: ProbeMode::Iterated, eps: None, pilot: 200, q: 2 }
    }
}

/// Finds `Z` with `e(P, Z) = y` using an OWFID impersonator.
///
/// Publishes `v = (e(P, Q*) · y^{s*})^{-1}` for a random simulation key,
/// answers the cheating verifier honestly with that key, probes for two
/// accepting transcripts and extracts.
pub fn owfid_inverter<B: Backend, A: AttackerPair<B> + ?Sized>(
    attacker: &mut A,
    suite: &GroupSuite<B>,
    p: &B::G1,
    y: &B::G2,
    config: InverterConfig,
    rng: &mut ChaCha20Rng,
) -> Result<B::G1, LabError> {
    let q_star = suite.random_g1(rng);
    let s_star = suite.random_scalar(rng);
    let key = owfid::key_from_parts(suite, p.clone(), y.clone(), q_star.clone(), s_star);
    let pk = match &key.public {
        crate::id::PublicKey::Owfid(pk) => pk.clone(),
        _ => unreachable!("OWFID key"),
    };
    let simkey = OwfidSecret { q: q_star, s: s_star };
    let rewinder = Rewinder::new(suite, key, config.q);
    let fail = |e| LabError::InversionFailed(Box::new(e));
    let eps = match config.eps {
        Some(e) => e,
        None => rewinder.estimate_epsilon(attacker, config.pilot, rng.gen()).map_err(fail)?,
    };
    let (t1, t2) = probe_strategy(&rewinder, attacker, eps, config.mode, rng).map_err(fail)?;
    owfid_extractor(suite, &t1, &t2, &simkey, &pk).map_err(fail)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::algebra::Transparent;
    use crate::id::{Decision, PublicKey, SchemeKeyPair, SecretKey};
    use crate::lab::ScriptedAttacker;
    use crate::stats::at_least_3sigma;

    fn tr(b: &Transparent, x: u64, m: u64, t: u64, a: u64) -> Transcript<Transparent> {
        let s = |v| Component::Scalar(crate::algebra::Fp::new(v, 11));
        Transcript {
            scheme: SchemeId::Owfid,
            commitment: vec![Component::G2(b.g2(x))],
            challenge: vec![s(m)],
            response: vec![Component::G1(b.g1(t)), s(a)],
            decision: Decision::Accept,
            seed: 0,
        }
    }

    fn worked() -> (Transparent, GroupSuite<Transparent>, SchemeKeyPair<Transparent>) {
        let b = Transparent::new(11).unwrap();
        let suite = GroupSuite::new(b);
        let key = owfid::key_from_parts(&suite, b.g1(2), b.g2(5), b.g1(3), suite.scalar(4));
        (b, suite, key)
    }

    fn split(key: &SchemeKeyPair<Transparent>) -> (OwfidPublic<Transparent>, OwfidSecret<Transparent>) {
        match (&key.public, &key.secret) {
            (PublicKey::Owfid(p), SecretKey::Owfid(s)) => (p.clone(), s.clone()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn same_witness_on_worked_example() {
        let (b, suite, key) = worked();
        let (pk, sk) = split(&key);
        assert_eq!(pk.v, b.g2(7));
        let t1 = tr(&b, 1, 3, 10, 3);
        let t2 = tr(&b, 1, 5, 5, 0);
        assert_eq!(owfid_extractor(&suite, &t1, &t2, &sk, &pk), Err(LabError::SameWitness));
    }

    #[test]
    fn second_key_yields_preimage() {
        let (b, suite, key) = worked();
        let (pk, sk) = split(&key);
        // All keys (Q', s') with e(P, Q') · y^{s'} = v^{-1}: 2q' + 5s' ≡ 4.
        let mut seen = 0;
        for s2 in 0..11u64 {
            for q2 in 0..11u64 {
                if (2 * q2 + 5 * s2) % 11 != 4 || s2 == 4 {
                    continue;
                }
                seen += 1;
                let other = owfid::key_from_parts(&suite, b.g1(2), b.g2(5), b.g1(q2), suite.scalar(s2));
                assert_eq!(other.public, key.public);
                // Witness R = g^1, r = 2; commitment e(P,R)·y^r = g_T^{2+10} = g_T^1.
                let t = |m: u64| tr(&b, 1, m, (1 + q2 * m) % 11, (2 + s2 * m) % 11);
                let z = owfid_extractor(&suite, &t(3), &t(5), &sk, &pk).unwrap();
                assert_eq!(z, b.g1(8));
            }
        }
        assert_eq!(seen, 10);
    }

    #[test]
    fn malformed_inputs() {
        let (b, suite, key) = worked();
        let (pk, sk) = split(&key);
        let t1 = tr(&b, 1, 3, 10, 3);
        assert!(matches!(owfid_extractor(&suite, &t1, &t1, &sk, &pk), Err(LabError::MalformedTranscripts(_))));
        let bad = tr(&b, 1, 5, 6, 0);
        assert!(matches!(owfid_extractor(&suite, &t1, &bad, &sk, &pk), Err(LabError::MalformedTranscripts(_))));
    }

    fn owfid_rewinder(suite: &GroupSuite<Transparent>, seed: u64) -> Rewinder<'_, Transparent> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        Rewinder::new(suite, owfid::keygen(suite, &mut rng), 2)
    }

    #[test]
    fn probe_outputs_share_commitment() {
        let suite = GroupSuite::new(Transparent::new(101).unwrap());
        let rewinder = owfid_rewinder(&suite, 1);
        let mut attacker = ScriptedAttacker::new(0.5, 2);
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let mut wins = 0;
        for _ in 0..500 {
            if let Ok((t1, t2)) = probe_strategy(&rewinder, &mut attacker, 0.5, ProbeMode::Iterated, &mut rng) {
                assert_eq!(t1.commitment, t2.commitment);
                assert_eq!(t1.seed, t2.seed);
                assert_ne!(t1.challenge, t2.challenge);
                assert!(t1.decision.is_accept() && t2.decision.is_accept());
                wins += 1;
            }
        }
        let bound = 0.5 * (1.0 - (-1.0f64).exp()).powi(2);
        assert!(at_least_3sigma(wins, 500, bound), "{wins}");
    }

    #[test]
    fn perfect_attacker_always_probes() {
        let suite = GroupSuite::new(Transparent::new(101).unwrap());
        let rewinder = owfid_rewinder(&suite, 3);
        let mut attacker = ScriptedAttacker::perfect(2);
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for _ in 0..100 {
            probe_strategy(&rewinder, &mut attacker, 1.0, ProbeMode::Iterated, &mut rng).unwrap();
        }
    }

    #[test]
    fn iterated_needs_eps_above_2_over_p() {
        let suite = GroupSuite::new(Transparent::new(101).unwrap());
        let rewinder = owfid_rewinder(&suite, 5);
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let r = probe_strategy(&rewinder, &mut ScriptedAttacker::new(0.01, 2), 0.01, ProbeMode::Iterated, &mut rng);
        assert!(matches!(r, Err(LabError::Precondition(_))));
    }

    fn inverter_rate(attacker: ScriptedAttacker, mode: ProbeMode, eps: Option<f64>, runs: u64) -> u64 {
        let b = Transparent::new(101).unwrap();
        let suite = GroupSuite::new(b);
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let mut attacker = attacker;
        let config = InverterConfig { mode, eps, ..InverterConfig::default() };
        let mut wins = 0;
        for _ in 0..runs {
            let p = suite.random_g1_generator(&mut rng);
            let y = suite.random_g2(&mut rng);
            if let Ok(z) = owfid_inverter(&mut attacker, &suite, &p, &y, config, &mut rng) {
                assert_eq!(suite.pair_raw(&p, &z), y);
                wins += 1;
            }
        }
        wins
    }

    #[test]
    fn inverter_iterated() {
        let wins = inverter_rate(ScriptedAttacker::new(0.5, 2), ProbeMode::Iterated, Some(0.5), 500);
        assert!(at_least_3sigma(wins, 500, 3.0 / 16.0), "{wins}");
    }

    #[test]
    fn inverter_single_shot() {
        let wins = inverter_rate(ScriptedAttacker::new(0.5, 2), ProbeMode::SingleShot, Some(0.5), 500);
        assert!(at_least_3sigma(wins, 500, 0.25 / 9.0), "{wins}");
    }

    #[test]
    fn inverter_with_pilot_and_perfect_attacker() {
        let wins = inverter_rate(ScriptedAttacker::perfect(2), ProbeMode::Iterated, None, 100);
        assert!(crate::stats::within_3sigma(wins, 100, 100.0 / 101.0), "{wins}");
    }
}
