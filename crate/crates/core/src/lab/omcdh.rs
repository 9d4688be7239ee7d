//! The one-more-CDH game and the CDHID reduction to it.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, DiscreteLog, GroupSuite, Scalar};
use crate::id::cdhid::{self, CdhidPublic};
use crate::id::{Component, Message, PublicKey, SchemeError};
use crate::report::GameReport;

use super::{attack_rngs, AttackerPair, LabError, ProverBackend, ProverOracle};

/// CDH oracle `h ↦ h^a` with a query budget, followed by a one-shot
/// challenge oracle. CDH queries after the challenge are refused.
pub struct OmCdhOracle<'s, B: Backend> {
    suite: &'s GroupSuite<B>,
    a: Scalar,
    limit: u64,
    queries: u64,
    challenge: Option<B::G1>,
    violated: bool,
    rng: ChaCha20Rng,
}

impl<'s, B: Backend> OmCdhOracle<'s, B> {
    pub fn new(suite: &'s GroupSuite<B>, a: Scalar, limit: u64, rng: ChaCha20Rng) -> Self {
        Self { suite, a, limit, queries: 0, challenge: None, violated: false, rng }
    }

    pub fn cdh(&mut self, h: &B::G1) -> Result<B::G1, LabError> {
        if self.challenge.is_some() {
            self.violated = true;
            return Err(LabError::OrderingViolation);
        }
        if self.queries >= self.limit {
            self.violated = true;
            return Err(LabError::BudgetExceeded { oracle: "cdh", limit: self.limit });
        }
        self.queries += 1;
        Ok(self.suite.g1_pow_raw(h, &self.a))
    }

    /// The random challenge `r`. Repeated calls return the same point.
    pub fn challenge(&mut self) -> B::G1 {
        if self.challenge.is_none() {
            self.challenge = Some(self.suite.random_g1(&mut self.rng));
        }
        self.challenge.clone().expect("just set")
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn violated(&self) -> bool {
        self.violated
    }

    /// Whether `answer = r^a` for an issued challenge, with no rule broken.
    fn wins(&self, answer: &B::G1) -> bool {
        match &self.challenge {
            Some(r) => !self.violated && *answer == self.suite.g1_pow_raw(r, &self.a),
            None => false,
        }
    }
}

pub trait OmCdhAdversary<B: Backend> {
    /// Given `(g, g^a)` and the oracles, returns a guess for `r^a`.
    fn solve(
        &mut self,
        suite: &GroupSuite<B>,
        g: &B::G1,
        ga: &B::G1,
        oracle: &mut OmCdhOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<B::G1>;
}

/// Runs `trials` independent one-more-CDH instances with budget `q`.
pub fn om_cdh_game<B: Backend, A: OmCdhAdversary<B> + ?Sized>(
    adversary: &mut A,
    suite: &GroupSuite<B>,
    q: u64,
    trials: u64,
    seed: u64,
) -> GameReport {
    let start = Instant::now();
    let mut report = GameReport::new("omcdh").param("p", suite.order()).param("q", q);
    let g = suite.generator();
    for trial in 0..trials {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let a = suite.random_scalar(&mut rng);
        let ga = suite.g1_pow_raw(&g, &a);
        let mut oracle = OmCdhOracle::new(suite, a, q, ChaCha20Rng::seed_from_u64(rng.gen()));
        let answer = adversary.solve(suite, &g, &ga, &mut oracle, &mut rng);
        report.record_trial(answer.is_some_and(|t| oracle.wins(&t)));
        report.add_queries("cdh", oracle.queries());
        report.add_queries("violations", oracle.violated() as u64);
    }
    report.elapsed = start.elapsed();
    report
}

/// Reads `a` and answers `r^a`. Positive control.
#[derive(Debug, Default, Clone, Copy)]
pub struct OmniscientCdhAdversary;

impl<B: DiscreteLog> OmCdhAdversary<B> for OmniscientCdhAdversary {
    fn solve(
        &mut self,
        suite: &GroupSuite<B>,
        _g: &B::G1,
        ga: &B::G1,
        oracle: &mut OmCdhOracle<'_, B>,
        _rng: &mut ChaCha20Rng,
    ) -> Option<B::G1> {
        let a = suite.scalar(suite.backend().dlog_g1(ga)?);
        let r = oracle.challenge();
        Some(suite.g1_pow_raw(&r, &a))
    }
}

/// Answers with a uniformly random point.
#[derive(Debug, Default, Clone, Copy)]
pub struct RandomGuessAdversary;

impl<B: Backend> OmCdhAdversary<B> for RandomGuessAdversary {
    fn solve(
        &mut self,
        suite: &GroupSuite<B>,
        _g: &B::G1,
        _ga: &B::G1,
        oracle: &mut OmCdhOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<B::G1> {
        oracle.challenge();
        Some(suite.random_g1(rng))
    }
}

/// Asks the CDH oracle about the challenge itself, which the rules forbid.
#[derive(Debug, Default, Clone, Copy)]
pub struct LateQueryAdversary;

impl<B: Backend> OmCdhAdversary<B> for LateQueryAdversary {
    fn solve(
        &mut self,
        _suite: &GroupSuite<B>,
        _g: &B::G1,
        _ga: &B::G1,
        oracle: &mut OmCdhOracle<'_, B>,
        _rng: &mut ChaCha20Rng,
    ) -> Option<B::G1> {
        let r = oracle.challenge();
        oracle.cdh(&r).ok()
    }
}

/// Answers the cheating verifier's challenges with the CDH oracle.
struct CdhProver<'o, 's, B: Backend> {
    oracle: &'o mut OmCdhOracle<'s, B>,
}

impl<B: Backend> ProverBackend<B> for CdhProver<'_, '_, B> {
    fn commit(&mut self) -> Result<Option<Message<B>>, LabError> {
        Ok(None)
    }

    fn respond(&mut self, challenge: &[Component<B>]) -> Result<Message<B>, LabError> {
        match challenge {
            [Component::G1(h)] => Ok(vec![Component::G1(self.oracle.cdh(h)?)]),
            _ => Err(SchemeError::ProtocolViolation("malformed challenge".into()).into()),
        }
    }
}

/// Wraps a CDHID attacker as a one-more-CDH adversary.
///
/// The public key is `g^a`. Every challenge `h_i` the cheating verifier
/// sends is answered with a CDH query. The challenge `r` then goes to the
/// cheating prover, whose response `t` is returned.
pub fn cdhid_reduction<B: Backend, A: AttackerPair<B> + ?Sized>(
    attacker: &mut A,
    suite: &GroupSuite<B>,
    ga: &B::G1,
    oracle: &mut OmCdhOracle<'_, B>,
    seed: u64,
) -> Result<B::G1, LabError> {
    let mut interactions = 0;
    cdhid_reduction_counted(attacker, suite, ga, oracle, seed, &mut interactions)
}

/// [`cdhid_reduction`], also reporting how many prover sessions the
/// cheating verifier opened.
pub fn cdhid_reduction_counted<B: Backend, A: AttackerPair<B> + ?Sized>(
    attacker: &mut A,
    suite: &GroupSuite<B>,
    ga: &B::G1,
    oracle: &mut OmCdhOracle<'_, B>,
    seed: u64,
    interactions: &mut u64,
) -> Result<B::G1, LabError> {
    let cdhid_pk = CdhidPublic { v: ga.clone() };
    let pk = PublicKey::Cdhid(cdhid_pk.clone());
    let (mut coins, _, _) = attack_rngs(seed);
    let limit = oracle.limit();
    let state = {
        let mut prover = ProverOracle::new(CdhProver { oracle: &mut *oracle }, limit);
        let state = attacker.cheating_verifier(suite, &pk, &mut prover, &mut coins);
        *interactions = prover.sessions();
        state?
    };
    let r = oracle.challenge();
    let response = attacker.cheating_prover(suite, &pk, &state, &mut |_| vec![Component::G1(r.clone())], &mut coins);
    match response.as_slice() {
        [Component::G1(t)] if cdhid::verify(&suite.fork(), &cdhid_pk, &r, t).is_accept() => Ok(t.clone()),
        _ => Err(LabError::AttackFailed),
    }
}

/// [`cdhid_reduction`] as a game adversary, tallying why runs fail.
#[derive(Debug, Clone)]
pub struct CdhidReduction<A> {
    pub attacker: A,
    pub attack_failures: u64,
    pub budget_errors: u64,
    /// Prover sessions opened by the attacker, summed over runs.
    pub interactions: u64,
    /// Runs where CDH queries outnumbered the attacker's prover sessions.
    pub excess_query_runs: u64,
}

impl<A> CdhidReduction<A> {
    pub fn new(attacker: A) -> Self {
        Self { attacker, attack_failures: 0, budget_errors: 0, interactions: 0, excess_query_runs: 0 }
    }
}

impl<B: Backend, A: AttackerPair<B>> OmCdhAdversary<B> for CdhidReduction<A> {
    fn solve(
        &mut self,
        suite: &GroupSuite<B>,
        _g: &B::G1,
        ga: &B::G1,
        oracle: &mut OmCdhOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<B::G1> {
        let mut interactions = 0;
        let before = oracle.queries();
        let out = cdhid_reduction_counted(&mut self.attacker, suite, ga, oracle, rng.gen(), &mut interactions);
        self.interactions += interactions;
        self.excess_query_runs += (oracle.queries() - before > interactions) as u64;
        match out {
            Ok(t) => Some(t),
            Err(LabError::AttackFailed) => {
                self.attack_failures += 1;
                None
            }
            Err(_) => {
                self.budget_errors += 1;
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Transparent;
    use crate::id::cdhid;
    use crate::lab::{estimate_success, ScriptedAttacker};
    use crate::stats::within_3sigma;

    fn suite(p: u64) -> GroupSuite<Transparent> {
        GroupSuite::new(Transparent::new(p).unwrap())
    }

    #[test]
    fn omniscient_always_wins() {
        let r = om_cdh_game(&mut OmniscientCdhAdversary, &suite(1009), 3, 200, 1);
        assert_eq!(r.wins, 200);
    }

    #[test]
    fn late_query_loses() {
        let r = om_cdh_game(&mut LateQueryAdversary, &suite(1009), 3, 100, 1);
        assert_eq!(r.wins, 0);
        assert_eq!(r.query_count("violations"), 100);
    }

    #[test]
    fn random_guess_at_q0() {
        let p = 1009;
        let r = om_cdh_game(&mut RandomGuessAdversary, &suite(p), 0, 5000, 2);
        assert!(within_3sigma(r.wins, r.trials, 1.0 / p as f64), "{} wins", r.wins);
    }

    #[test]
    fn reduction_with_perfect_attacker() {
        let mut red = CdhidReduction::new(ScriptedAttacker::perfect(4));
        let s = suite(1009);
        let r = om_cdh_game(&mut red, &s, 4, 100, 3);
        // The challenge oracle's r is the identity with probability 1/p.
        assert!(r.wins >= 99, "{} wins", r.wins);
        assert!(r.query_count("cdh") <= 4 * 100);
    }

    #[test]
    fn reduction_tracks_attacker_success() {
        let s = suite(1009);
        let q = 3;
        let mut attacker = ScriptedAttacker::new(0.3, q);
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let key = cdhid::keygen(&s, &mut rng);
        let wins = estimate_success(&mut attacker, &s, &key, q, 5000, 6).unwrap();
        let eps = wins as f64 / 5000.0;
        let mut red = CdhidReduction::new(attacker);
        let r = om_cdh_game(&mut red, &s, q, 1000, 7);
        assert!(within_3sigma(r.wins, r.trials, eps), "{} vs {eps}", r.advantage());
        assert_eq!(r.query_count("violations"), 0);
        assert_eq!(red.excess_query_runs, 0);
        assert_eq!(r.query_count("cdh"), red.interactions);
    }

    #[test]
    fn over_budget_attacker_is_stopped() {
        let s = suite(101);
        let mut red = CdhidReduction::new(ScriptedAttacker::perfect(3));
        let r = om_cdh_game(&mut red, &s, 2, 50, 8);
        assert_eq!(r.wins, 0);
        assert_eq!(red.budget_errors, 50);
        assert_eq!(r.query_count("cdh"), 2 * 50);
    }
}
