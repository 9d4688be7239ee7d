//! Existential forgery under chosen-message attack.
//!
//! Each trial draws a fresh key, hands the public key and a budgeted
//! signing oracle to the forger, and checks its output: the signature must
//! verify and the message must not have been signed by the oracle. A forger
//! that exceeds `q_S` signature queries or `q_H` hash queries loses.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::algebra::{Backend, BackendKind, DiscreteLog, GroupSuite, Scalar};
use crate::id::SchemeError;
use crate::report::GameReport;

use super::bb::{self, BbPublic, BbSecret};
use super::bls;
use super::hash::{hash_to_group, BitString, HashError, HashMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigScheme {
    Bls,
    Bb,
}

impl SigScheme {
    pub fn name(&self) -> &'static str {
        match self {
            SigScheme::Bls => "bls",
            SigScheme::Bb => "bb",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "bls" => Some(SigScheme::Bls),
            "bb" => Some(SigScheme::Bb),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForgeryGameConfig {
    pub q_s: u64,
    pub q_h: u64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("{oracle} budget exceeded")]
    BudgetExceeded { oracle: &'static str },
    #[error("oracle signs {0} messages only")]
    WrongScheme(&'static str),
    #[error(transparent)]
    Hash(#[from] HashError),
    #[error(transparent)]
    Sign(#[from] SchemeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigPublic<B: Backend> {
    Bls { v: B::G1, mode: HashMode },
    Bb(BbPublic<B>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SigSecret {
    Bls(Scalar),
    Bb(BbSecret),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Forgery<B: Backend> {
    Bls { msg: BitString, sigma: B::G1 },
    Bb { m: Scalar, sigma: B::G1, r: Scalar },
}

/// Signing and hashing oracle with query budgets and a log of signed
/// messages.
pub struct SigningOracle<'s, B: Backend> {
    suite: &'s GroupSuite<B>,
    secret: SigSecret,
    mode: HashMode,
    q_s: u64,
    q_h: u64,
    sign_queries: u64,
    hash_queries: u64,
    signed_bits: HashSet<BitString>,
    signed_scalars: HashSet<u64>,
    violated: bool,
    rng: ChaCha20Rng,
}

impl<'s, B: Backend> SigningOracle<'s, B> {
    pub fn new_bls(suite: &'s GroupSuite<B>, x: Scalar, mode: HashMode, q_s: u64, q_h: u64) -> Self {
        Self::new(suite, SigSecret::Bls(x), mode, q_s, q_h, 0)
    }

    pub fn new_bb(suite: &'s GroupSuite<B>, sk: BbSecret, q_s: u64, seed: u64) -> Self {
        Self::new(suite, SigSecret::Bb(sk), HashMode::TestVector, q_s, 0, seed)
    }

    fn new(suite: &'s GroupSuite<B>, secret: SigSecret, mode: HashMode, q_s: u64, q_h: u64, seed: u64) -> Self {
        Self {
            suite,
            secret,
            mode,
            q_s,
            q_h,
            sign_queries: 0,
            hash_queries: 0,
            signed_bits: HashSet::new(),
            signed_scalars: HashSet::new(),
            violated: false,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn sign_queries(&self) -> u64 {
        self.sign_queries
    }

    pub fn hash_queries(&self) -> u64 {
        self.hash_queries
    }

    /// Whether any budget was exceeded; such a forger loses.
    pub fn violated(&self) -> bool {
        self.violated
    }

    fn spend(&mut self, oracle: &'static str) -> Result<(), GameError> {
        let (used, cap) = match oracle {
            "sign" => (&mut self.sign_queries, self.q_s),
            _ => (&mut self.hash_queries, self.q_h),
        };
        if *used >= cap {
            self.violated = true;
            return Err(GameError::BudgetExceeded { oracle });
        }
        *used += 1;
        Ok(())
    }

    pub fn hash(&mut self, msg: &BitString) -> Result<B::G1, GameError> {
        self.spend("hash")?;
        Ok(hash_to_group(msg, &self.mode, self.suite)?)
    }

    pub fn sign_bls(&mut self, msg: &BitString) -> Result<B::G1, GameError> {
        let SigSecret::Bls(x) = self.secret else {
            return Err(GameError::WrongScheme("BB"));
        };
        self.spend("sign")?;
        self.signed_bits.insert(msg.clone());
        Ok(bls::sign(self.suite, &x, msg, &self.mode)?)
    }

    pub fn sign_bb(&mut self, m: &Scalar) -> Result<(B::G1, Scalar), GameError> {
        let SigSecret::Bb(sk) = &self.secret else {
            return Err(GameError::WrongScheme("BLS"));
        };
        let sk = sk.clone();
        self.spend("sign")?;
        self.signed_scalars.insert(m.value());
        let sig = bb::sign(self.suite, &sk, m, &mut self.rng)?;
        Ok((sig.sigma, sig.r))
    }

    /// The forged message was never submitted for signing.
    pub fn is_fresh(&self, forgery: &Forgery<B>) -> bool {
        match forgery {
            Forgery::Bls { msg, .. } => !self.signed_bits.contains(msg),
            Forgery::Bb { m, .. } => !self.signed_scalars.contains(&m.value()),
        }
    }
}

pub trait Forger<B: Backend> {
    fn forge(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &SigPublic<B>,
        oracle: &mut SigningOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery<B>>;
}

pub fn verify_forgery<B: Backend>(suite: &GroupSuite<B>, pk: &SigPublic<B>, forgery: &Forgery<B>) -> bool {
    match (pk, forgery) {
        (SigPublic::Bls { v, mode }, Forgery::Bls { msg, sigma }) => bls::verify(suite, v, msg, sigma, mode),
        (SigPublic::Bb(pk), Forgery::Bb { m, sigma, r }) => bb::verify(suite, pk, m, sigma, r),
        _ => false,
    }
}

/// Runs `config.trials` independent forgery attempts.
pub fn forgery_game<B: Backend, F: Forger<B>>(
    scheme: SigScheme,
    forger: &mut F,
    suite: &GroupSuite<B>,
    config: ForgeryGameConfig,
) -> GameReport {
    let start = Instant::now();
    let mut report = GameReport::new("forgery")
        .param("scheme", scheme.name())
        .param("p", suite.order())
        .param("q_s", config.q_s)
        .param("q_h", config.q_h);
    for trial in 0..config.trials {
        let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
        rng.set_stream(trial);
        let (pk, mut oracle) = match scheme {
            SigScheme::Bls => {
                let mode = match suite.kind() {
                    BackendKind::Transparent => HashMode::Oracle { key: rng.gen() },
                    kind => HashMode::default_for(kind),
                };
                let key = bls::keygen(suite, &mut rng);
                let oracle = SigningOracle::new_bls(suite, key.x, mode, config.q_s, config.q_h);
                (SigPublic::Bls { v: key.v, mode }, oracle)
            }
            SigScheme::Bb => {
                let key = bb::keygen(suite, &mut rng);
                let oracle = SigningOracle::new_bb(suite, key.secret, config.q_s, rng.gen());
                (SigPublic::Bb(key.public), oracle)
            }
        };
        let out = forger.forge(suite, &pk, &mut oracle, &mut rng);
        let won = match &out {
            Some(f) => !oracle.violated() && oracle.is_fresh(f) && verify_forgery(suite, &pk, f),
            None => false,
        };
        report.record_trial(won);
        report.add_queries("sign", oracle.sign_queries());
        report.add_queries("hash", oracle.hash_queries());
        report.add_queries("budget_violations", oracle.violated() as u64);
    }
    report.elapsed = start.elapsed();
    report
}

/// Asks for a signature on a random message and submits it unchanged.
#[derive(Debug, Default)]
pub struct ReplayForger;

impl<B: Backend> Forger<B> for ReplayForger {
    fn forge(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &SigPublic<B>,
        oracle: &mut SigningOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery<B>> {
        match pk {
            SigPublic::Bls { .. } => {
                let msg = BitString::random(32, rng);
                let sigma = oracle.sign_bls(&msg).ok()?;
                Some(Forgery::Bls { msg, sigma })
            }
            SigPublic::Bb(_) => {
                let m = suite.random_nonzero_scalar(rng);
                let (sigma, r) = oracle.sign_bb(&m).ok()?;
                Some(Forgery::Bb { m, sigma, r })
            }
        }
    }
}

/// Guesses a uniformly random signature on a fresh message.
#[derive(Debug, Default)]
pub struct RandomForger;

impl<B: Backend> Forger<B> for RandomForger {
    fn forge(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &SigPublic<B>,
        _oracle: &mut SigningOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery<B>> {
        let sigma = suite.random_g1(rng);
        Some(match pk {
            SigPublic::Bls { .. } => Forgery::Bls { msg: BitString::random(32, rng), sigma },
            SigPublic::Bb(_) => {
                Forgery::Bb { m: suite.random_nonzero_scalar(rng), sigma, r: suite.random_nonzero_scalar(rng) }
            }
        })
    }
}

/// Signs `extra + 1` random messages, then defers to `inner`.
#[derive(Debug, Default)]
pub struct GreedyForger<F> {
    pub extra: u64,
    pub inner: F,
}

impl<B: Backend, F: Forger<B>> Forger<B> for GreedyForger<F> {
    fn forge(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &SigPublic<B>,
        oracle: &mut SigningOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery<B>> {
        for _ in 0..=self.extra {
            match pk {
                SigPublic::Bls { .. } => {
                    let _ = oracle.sign_bls(&BitString::random(32, rng));
                }
                SigPublic::Bb(_) => {
                    let _ = oracle.sign_bb(&suite.random_nonzero_scalar(rng));
                }
            }
        }
        self.inner.forge(suite, pk, oracle, rng)
    }
}

/// Reads the secret key off the transparent encoding and signs a fresh
/// message. Positive control only.
#[derive(Debug, Default)]
pub struct OmniscientForger;

impl<B: DiscreteLog> Forger<B> for OmniscientForger {
    fn forge(
        &mut self,
        suite: &GroupSuite<B>,
        pk: &SigPublic<B>,
        oracle: &mut SigningOracle<'_, B>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery<B>> {
        let g = suite.generator();
        let dlog = |a: &B::G1| suite.scalar(suite.backend().dlog_g1(a).expect("subgroup element"));
        match pk {
            SigPublic::Bls { v, .. } => {
                let x = dlog(v);
                let msg = BitString::random(64, rng);
                let h = oracle.hash(&msg).ok()?;
                Some(Forgery::Bls { msg, sigma: suite.g1_pow_raw(&h, &x) })
            }
            SigPublic::Bb(pk) => {
                let (x, y) = (dlog(&pk.u), dlog(&pk.v));
                let m = suite.random_nonzero_scalar(rng);
                loop {
                    let r = suite.random_nonzero_scalar(rng);
                    if let Ok(e) = (x + m + y * r).inv() {
                        return Some(Forgery::Bb { m, sigma: suite.g1_pow_raw(&g, &e), r });
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Transparent;
    use crate::curve::{CurveParams, TateBackend};

    fn config(trials: u64) -> ForgeryGameConfig {
        ForgeryGameConfig { q_s: 4, q_h: 4, trials, seed: 9 }
    }

    #[test]
    fn replay_never_wins() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        for scheme in [SigScheme::Bls, SigScheme::Bb] {
            let r = forgery_game(scheme, &mut ReplayForger, &suite, config(200));
            assert_eq!(r.wins, 0);
            assert_eq!(r.query_count("sign"), 200);
        }
    }

    #[test]
    fn omniscient_always_wins() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        let curve = GroupSuite::new(TateBackend::new(CurveParams::q523()));
        for scheme in [SigScheme::Bls, SigScheme::Bb] {
            assert_eq!(forgery_game(scheme, &mut OmniscientForger, &suite, config(200)).wins, 200);
            assert_eq!(forgery_game(scheme, &mut OmniscientForger, &curve, config(50)).wins, 50);
        }
    }

    #[test]
    fn budget_overrun_loses() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        for scheme in [SigScheme::Bls, SigScheme::Bb] {
            let mut f = GreedyForger { extra: 4, inner: OmniscientForger };
            let r = forgery_game(scheme, &mut f, &suite, config(50));
            assert_eq!(r.wins, 0);
            assert_eq!(r.query_count("budget_violations"), 50);
            let mut f = GreedyForger { extra: 3, inner: OmniscientForger };
            assert_eq!(forgery_game(scheme, &mut f, &suite, config(50)).wins, 50);
        }
    }

    #[test]
    fn random_signature_wins_about_one_in_p() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        for scheme in [SigScheme::Bls, SigScheme::Bb] {
            let mut r = forgery_game(scheme, &mut RandomForger, &suite, config(20_000));
            assert!(r.check_near("1/p", 1.0 / 1009.0), "{scheme:?}: {}", r.wins);
        }
    }

    /// Every subset of `Z_11^*` signed through the oracle: a message is
    /// fresh exactly when it is outside the subset.
    #[test]
    fn freshness_predicate_exhaustive_p11() {
        let suite = GroupSuite::new(Transparent::new(11).unwrap());
        let key = bb::key_from_secret(&suite, suite.scalar(2), suite.scalar(3));
        for mask in 0u32..(1 << 10) {
            let mut oracle = SigningOracle::new_bb(&suite, key.secret.clone(), 10, 1);
            let mut signed = Vec::new();
            for m in 1..11u64 {
                if mask >> (m - 1) & 1 == 1 {
                    let (sigma, r) = oracle.sign_bb(&suite.scalar(m)).unwrap();
                    signed.push(Forgery::Bb { m: suite.scalar(m), sigma, r });
                }
            }
            for f in &signed {
                // a valid signature, but never a win
                assert!(verify_forgery(&suite, &SigPublic::Bb(key.public.clone()), f));
                assert!(!oracle.is_fresh(f));
            }
            for m in 1..11u64 {
                let f = Forgery::Bb { m: suite.scalar(m), sigma: suite.generator(), r: suite.scalar(1) };
                assert_eq!(oracle.is_fresh(&f), mask >> (m - 1) & 1 == 0);
            }
        }
    }
}
