//! The acceptance suite: one self-contained check per criterion, shared by
//! the `acceptance` test target and `pairid selftest`.

use std::net::{TcpListener, TcpStream};
use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{ddh_solve, g2_order_brute_force, Backend, GroupSuite, Transparent};
use crate::cost::{expected_row, CostTable};
use crate::curve::{CurveParams, TateBackend};
use crate::id::session::run_session_detailed;
use crate::id::{keygen, owfid, run_session, MessageCodec, PublicKey, SchemeId, SchemeKeyPair};
use crate::lab::soundness::{random_response_accepts, wrong_key_accepts, wrong_key_never_accepted};
use crate::lab::{
    agreement::agreement_sweep, estimate_success, heavy_mass_from_counts, heavy_row_stats, invert_to_ddh, om_cdh_game,
    owfid_inverter, probe_strategy, BlsidReduction, CdhidReduction, InverterConfig, NoisyInverter, PerfectInverter,
    ProbeMode, Rewinder, ScriptedAttacker, SummaryMatrix,
};
use crate::sig::{forgery_game, ForgeryGameConfig, SigScheme};
use crate::stats::{at_least_3sigma, within_3sigma};
use crate::wire::{frame_decode, frame_encode, read_frame, run_verifier, serve_prover, Frame, Tag};

/// Criterion numbers and titles.
pub const CRITERIA: [(u8, &str); 14] = [
    (1, "viability"),
    (2, "cost table"),
    (3, "bilinearity and non-degeneracy"),
    (4, "cross-backend agreement"),
    (5, "ddh solver"),
    (6, "heavy-row lemma"),
    (7, "probing strategy"),
    (8, "extractor and inverter"),
    (9, "one-more-cdh wrapper"),
    (10, "collision term"),
    (11, "pairing inversion to ddh"),
    (12, "soundness floor"),
    (13, "witness indistinguishability"),
    (14, "wire layer"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {}: {} ({} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.millis
        )
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs criterion `id`. Panics on an unknown id.
pub fn run_check(id: u8) -> CheckResult {
    let title = CRITERIA.iter().find(|(n, _)| *n == id).map(|(_, t)| *t).expect("criterion 1..=14");
    let start = Instant::now();
    let outcome = match id {
        1 => viability(),
        2 => cost_table(),
        3 => bilinearity(),
        4 => agreement(),
        5 => ddh(),
        6 => heavy_rows(),
        7 => probing(),
        8 => inverter(),
        9 => omcdh(),
        10 => collisions(),
        11 => inversion_ddh(),
        12 => soundness(),
        13 => witness_indistinguishability(),
        14 => wire(),
        _ => unreachable!(),
    };
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult { id, title, pass, detail, millis: start.elapsed().as_millis() }
}

pub fn run_all() -> Vec<CheckResult> {
    CRITERIA.iter().map(|(id, _)| run_check(*id)).collect()
}

fn transparent(p: u64) -> GroupSuite<Transparent> {
    GroupSuite::new(Transparent::new(p).expect("prime modulus"))
}

fn curve(params: CurveParams) -> GroupSuite<TateBackend> {
    GroupSuite::new(TateBackend::new(params))
}

/// Honest sessions on one suite. SCL sessions the prover aborts are
/// counted apart; everything completed must accept.
fn viability_on<B: Backend>(suite: &GroupSuite<B>, sessions: u64, seed: u64) -> Result<(u64, u64), String> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (mut accepted, mut scl_aborts) = (0, 0);
    for scheme in SchemeId::ALL {
        let mut key = keygen(scheme, suite, &mut rng).map_err(|e| e.to_string())?;
        for i in 0..sessions {
            if i % 100 == 0 {
                key = keygen(scheme, suite, &mut rng).map_err(|e| e.to_string())?;
            }
            let out = run_session_detailed(scheme, &key, suite, rng.gen()).map_err(|e| e.to_string())?;
            let t = out.transcript;
            if t.decision.is_accept() {
                accepted += 1;
            } else if scheme == SchemeId::Scl && t.response.is_empty() {
                scl_aborts += 1;
            } else {
                return Err(format!("{scheme} on {} p={}: honest session {i} rejected", suite.kind(), suite.order()));
            }
        }
    }
    Ok((accepted, scl_aborts))
}

/// Number of SCL sessions the prover aborts out of `sessions`.
fn scl_aborts<B: Backend>(suite: &GroupSuite<B>, sessions: u64, seed: u64) -> Result<u64, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut key = keygen(SchemeId::Scl, suite, &mut rng).map_err(|e| e.to_string())?;
    let mut aborts = 0;
    for i in 0..sessions {
        if i % 100 == 0 {
            key = keygen(SchemeId::Scl, suite, &mut rng).map_err(|e| e.to_string())?;
        }
        let t = run_session_detailed(SchemeId::Scl, &key, suite, rng.gen()).map_err(|e| e.to_string())?.transcript;
        if !t.decision.is_accept() {
            ensure(t.response.is_empty(), || format!("SCL session {i} rejected a completed response"))?;
            aborts += 1;
        }
    }
    Ok(aborts)
}

fn viability() -> Outcome {
    let n = 1000;
    let abort_sample = 20_000;
    let mut parts = Vec::new();
    let mut check_suite = |label: String, p: u64, acc: u64, aborts: u64, sampled: u64| -> Result<(), String> {
        ensure(acc + aborts == 6 * n, || format!("{label}: {acc} accepted"))?;
        let rate = 1.0 / (p - 1) as f64;
        ensure(within_3sigma(sampled, abort_sample, rate), || {
            format!("{label}: SCL aborted {sampled} of {abort_sample}, expected rate 1/(p-1)")
        })?;
        parts.push(format!("{label} scl-aborts={aborts}/{n}, {sampled}/{abort_sample}"));
        Ok(())
    };
    for p in [11, 101, 1009] {
        let suite = transparent(p);
        let (acc, aborts) = viability_on(&suite, n, p)?;
        let sampled = scl_aborts(&suite, abort_sample, p + 1)?;
        check_suite(format!("transparent p={p}"), p, acc, aborts, sampled)?;
    }
    for params in [CurveParams::q59(), CurveParams::q83()] {
        let suite = curve(params);
        let (acc, aborts) = viability_on(&suite, n, params.q)?;
        let sampled = scl_aborts(&suite, abort_sample, params.q + 1)?;
        check_suite(format!("curve p={}", params.p), params.p, acc, aborts, sampled)?;
    }
    Ok(format!("{n} sessions x 6 schemes per suite, every completed session accepted; {}", parts.join(", ")))
}

fn cost_table() -> Outcome {
    let mut lines = Vec::new();
    let t = CostTable::measure(&transparent(1009), &SchemeId::ALL, 100, 1).map_err(|e| e.to_string())?;
    let c = CostTable::measure(&curve(CurveParams::q523()), &SchemeId::ALL, 20, 2).map_err(|e| e.to_string())?;
    for table in [&t, &c] {
        for m in &table.rows {
            let want = expected_row(m.row.scheme);
            ensure(m.row == want, || {
                format!("{} on {}: measured {} expected {}", m.row.scheme, table.backend, m.row, want)
            })?;
            lines.push(m.row.scheme.name());
        }
    }
    Ok(format!("all six rows equal on both backends ({} rows)", lines.len()))
}

fn bilinear_identities<B: Backend>(suite: &GroupSuite<B>, n: u64, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for i in 0..n {
        let (p, q, p2) = (suite.random_g1(&mut rng), suite.random_g1(&mut rng), suite.random_g1(&mut rng));
        let (a, b) = (suite.random_scalar(&mut rng), suite.random_scalar(&mut rng));
        let lhs = suite.pair_raw(&suite.g1_pow_raw(&p, &a), &suite.g1_pow_raw(&q, &b));
        let rhs = suite.g2_pow_raw(&suite.pair_raw(&p, &q), &(a * b));
        ensure(lhs == rhs, || format!("{} trial {i}: e(P^a, Q^b) != e(P, Q)^ab", suite.kind()))?;
        let sum = suite.backend().g1_op(&p, &p2);
        let split = suite.backend().g2_op(&suite.pair_raw(&p, &q), &suite.pair_raw(&p2, &q));
        ensure(suite.pair_raw(&sum, &q) == split, || format!("{} trial {i}: linearity", suite.kind()))?;
        ensure(suite.pair_raw(&p, &q) == suite.pair_raw(&q, &p), || format!("{} trial {i}: symmetry", suite.kind()))?;
    }
    Ok(())
}

fn gt_order<B: Backend>(suite: &GroupSuite<B>) -> Result<(), String> {
    let z = suite.pair_raw(&suite.generator(), &suite.generator());
    let order = g2_order_brute_force(suite.backend(), &z);
    ensure(order == suite.order(), || format!("{}: ord e(g,g) = {order}, p = {}", suite.kind(), suite.order()))
}

fn bilinearity() -> Outcome {
    bilinear_identities(&transparent(1009), 1000, 3)?;
    bilinear_identities(&curve(CurveParams::q523()), 1000, 4)?;
    for p in [5, 11, 101, 1009, 10007] {
        gt_order(&transparent(p))?;
    }
    for params in [CurveParams::q59(), CurveParams::q83(), CurveParams::q523()] {
        gt_order(&curve(params))?;
    }
    Ok("1000 identities per backend; ord e(g,g) = p for p in {5,11,101,1009,10007} and curve p in {5,7,131}".into())
}

fn agreement() -> Outcome {
    let mut cases = 0;
    for params in [CurveParams::q59(), CurveParams::q83()] {
        let suite = curve(params);
        for scheme in SchemeId::ALL {
            let r = agreement_sweep(scheme, &suite, 2, params.p);
            ensure(r.mismatches == 0, || format!("{scheme} at p={}: {} mismatches", params.p, r.mismatches))?;
            ensure(r.accepts > 0, || format!("{scheme} at p={}: sweep never accepts", params.p))?;
            cases += r.cases;
        }
    }
    Ok(format!("{cases} decisions identical at p = 5 and p = 7"))
}

fn ddh() -> Outcome {
    let suite = transparent(11);
    let b = *suite.backend();
    let g = suite.generator();
    let mut n = 0;
    for a in 0..11 {
        for x in 0..11 {
            for c in 0..11 {
                let got = ddh_solve(&suite, &g, &b.g1(a), &b.g1(x), &b.g1(c));
                ensure(got == (c == a * x % 11), || format!("({a},{x},{c})"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} of 1331 tuples decided correctly"))
}

fn heavy_rows() -> Outcome {
    let mut instances = 0u64;
    for rows in 1..=4usize {
        for cols in 1..=6usize {
            let mask = (1u32 << cols) - 1;
            for bits in 0u32..1 << (rows * cols) {
                let counts: Vec<u64> = (0..rows).map(|r| (bits >> (r * cols) & mask).count_ones() as u64).collect();
                let total: u64 = counts.iter().sum();
                // ε ≥ 2/cols, i.e. ones ≥ 2·rows
                if total < 2 * rows as u64 {
                    continue;
                }
                instances += 1;
                let rep = heavy_mass_from_counts(&counts, cols as u64);
                ensure(rep.heavy_mass >= 0.5, || format!("{rows}x{cols} mask {bits:#x}: mass {}", rep.heavy_mass))?;
            }
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let mut sampled = 0;
    for _ in 0..500 {
        let density: Vec<f64> = (0..64).map(|_| rng.gen::<f64>().powi(3)).collect();
        let m = SummaryMatrix::from_fn(64, 64, |r, _| rng.gen_bool(density[r]));
        let rep = heavy_row_stats(&m);
        if rep.epsilon >= 2.0 / 64.0 {
            sampled += 1;
            ensure(rep.heavy_mass >= 0.5, || format!("64x64 sample: mass {}", rep.heavy_mass))?;
        }
    }
    Ok(format!(
        "{instances} exhaustive instances up to 4x6 and {sampled} sampled 64x64 matrices have heavy mass >= 1/2"
    ))
}

fn owfid_rewinder(suite: &GroupSuite<Transparent>, seed: u64) -> Rewinder<'_, Transparent> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    Rewinder::new(suite, owfid::keygen(suite, &mut rng), 2)
}

fn probing() -> Outcome {
    let suite = transparent(101);
    let rewinder = owfid_rewinder(&suite, 71);
    let mut attacker = ScriptedAttacker::new(0.5, 2);
    let mut rng = ChaCha20Rng::seed_from_u64(72);
    let runs = 500;
    let mut wins = 0;
    for _ in 0..runs {
        if let Ok((t1, t2)) = probe_strategy(&rewinder, &mut attacker, 0.5, ProbeMode::Iterated, &mut rng) {
            let ok = t1.commitment == t2.commitment
                && t1.challenge != t2.challenge
                && t1.decision.is_accept()
                && t2.decision.is_accept();
            ensure(ok, || "probe returned an unusable pair".into())?;
            wins += 1;
        }
    }
    let bound = 0.5 * (1.0 - (-1.0f64).exp()).powi(2);
    ensure(at_least_3sigma(wins, runs, bound), || format!("{wins}/{runs} below {bound:.4}"))?;
    Ok(format!("{wins}/{runs} = {:.3} >= {bound:.4} - 3 sigma", wins as f64 / runs as f64))
}

fn inverter_wins(mode: ProbeMode, runs: u64, seed: u64) -> Result<u64, String> {
    let suite = transparent(101);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut attacker = ScriptedAttacker::new(0.5, 2);
    let config = InverterConfig { mode, eps: Some(0.5), ..InverterConfig::default() };
    let mut wins = 0;
    for i in 0..runs {
        let p = suite.random_g1_generator(&mut rng);
        let y = suite.random_g2(&mut rng);
        if let Ok(z) = owfid_inverter(&mut attacker, &suite, &p, &y, config, &mut rng) {
            ensure(suite.pair_raw(&p, &z) == y, || format!("run {i}: e(P, Z) != y"))?;
            wins += 1;
        }
    }
    Ok(wins)
}

fn inverter() -> Outcome {
    let runs = 500;
    let it = inverter_wins(ProbeMode::Iterated, runs, 81)?;
    ensure(at_least_3sigma(it, runs, 3.0 / 16.0), || format!("iterated {it}/{runs} below 3/16"))?;
    let ss = inverter_wins(ProbeMode::SingleShot, runs, 82)?;
    let bound = 0.25 / 9.0;
    ensure(at_least_3sigma(ss, runs, bound), || format!("single-shot {ss}/{runs} below eps^2/9"))?;
    Ok(format!("iterated {it}/{runs} (>= 3/16), single-shot {ss}/{runs} (>= {bound:.4}); e(P, Z) = y in every success"))
}

fn omcdh() -> Outcome {
    let suite = transparent(1009);
    let q = 3;
    let mut attacker = ScriptedAttacker::new(0.3, q);
    let mut rng = ChaCha20Rng::seed_from_u64(91);
    let key = crate::id::cdhid::keygen(&suite, &mut rng);
    let est_trials = 5000;
    let est = estimate_success(&mut attacker, &suite, &key, q, est_trials, 92).map_err(|e| e.to_string())?;
    let eps = est as f64 / est_trials as f64;
    let mut red = CdhidReduction::new(attacker);
    let r = om_cdh_game(&mut red, &suite, q, 1000, 93);
    ensure(within_3sigma(r.wins, r.trials, eps), || format!("reduction {} vs attacker {eps:.3}", r.advantage()))?;
    ensure(red.excess_query_runs == 0, || format!("{} runs queried more than q", red.excess_query_runs))?;
    ensure(red.budget_errors == 0 && r.query_count("violations") == 0, || "budget or ordering violated".into())?;
    ensure(r.query_count("cdh") <= q * r.trials, || "cdh queries exceed q per run".into())?;
    Ok(format!(
        "attacker {eps:.3}, reduction {:.3}; cdh queries {} <= prover interactions {}",
        r.advantage(),
        r.query_count("cdh"),
        red.interactions
    ))
}

fn collisions() -> Outcome {
    let suite = transparent(1009);
    let mut f = BlsidReduction::new(ScriptedAttacker::perfect(8), 8, 4);
    let config = ForgeryGameConfig { q_s: 8, q_h: 0, trials: 1000, seed: 101 };
    let r = forgery_game(SigScheme::Bls, &mut f, &suite, config);
    ensure(within_3sigma(f.collisions, 1000, 0.5), || format!("{} collisions", f.collisions))?;
    ensure(r.wins + f.collisions == 1000, || {
        format!("{} runs neither collided nor forged", 1000 - r.wins - f.collisions)
    })?;
    ensure(f.attack_failures + f.other_errors == 0, || "attacker output failed to verify".into())?;
    Ok(format!("{} collisions in 1000; all {} other outputs are valid fresh BLS pairs", f.collisions, r.wins))
}

fn inversion_ddh() -> Outcome {
    let suite = transparent(11);
    let b = *suite.backend();
    let mut rng = ChaCha20Rng::seed_from_u64(111);
    for a in 0..11 {
        for x in 0..11 {
            for c in 0..11 {
                let got = invert_to_ddh(&mut PerfectInverter, &suite, &b.g2(1), &b.g2(a), &b.g2(x), &b.g2(c), &mut rng);
                ensure(got == (c == a * x % 11), || format!("perfect inverter wrong at ({a},{x},{c})"))?;
            }
        }
    }
    let big = transparent(1009);
    let bb = *big.backend();
    let eps: f64 = 0.7;
    let mut inv = NoisyInverter { eps };
    let mut wins = 0;
    for _ in 0..1000 {
        let (a, x) = (rng.gen_range(0..1009), rng.gen_range(0..1009));
        let y = big.random_g2_generator(&mut rng);
        let e = y.exponent();
        let pw = |k: u64| bb.g2(e * k % 1009);
        wins += invert_to_ddh(&mut inv, &big, &y, &pw(a), &pw(x), &pw(a * x % 1009), &mut rng) as u64;
    }
    ensure(at_least_3sigma(wins, 1000, eps.powi(4)), || format!("{wins}/1000 below eps^4"))?;
    Ok(format!("1331 tuples exact with a perfect inverter; eps=0.7 inverter {wins}/1000 >= eps^4 = {:.4}", eps.powi(4)))
}

fn soundness() -> Outcome {
    let suite = transparent(1009);
    let trials = 5000;
    let p = 1.0 / 1009.0;
    let mut parts = Vec::new();
    for scheme in SchemeId::ALL {
        let n =
            random_response_accepts(scheme, &suite, trials, 120 + scheme.tag() as u64).map_err(|e| e.to_string())?;
        ensure(within_3sigma(n, trials, p), || format!("{scheme}: random responses accepted {n}/{trials}"))?;
        let w = wrong_key_accepts(scheme, &suite, trials, 130 + scheme.tag() as u64).map_err(|e| e.to_string())?;
        if wrong_key_never_accepted(scheme) {
            ensure(w == 0, || format!("{scheme}: wrong-key prover accepted {w} times"))?;
        } else {
            ensure(within_3sigma(w, trials, p), || format!("{scheme}: wrong-key prover accepted {w}/{trials}"))?;
        }
        parts.push(format!("{scheme} random={n} wrong-key={w}"));
    }
    Ok(format!("{trials} trials each: {}", parts.join(", ")))
}

fn witness_indistinguishability() -> Outcome {
    let suite = transparent(13);
    let mut rng = ChaCha20Rng::seed_from_u64(131);
    let mut transcripts = 0;
    for _ in 0..3 {
        let key = owfid::keygen(&suite, &mut rng);
        let PublicKey::Owfid(pk) = &key.public else { unreachable!() };
        let secrets = owfid::all_secrets(&suite, pk);
        ensure(secrets.len() == 13, || format!("{} valid secrets, expected 13", secrets.len()))?;
        for m in 1..13 {
            let m = suite.scalar(m);
            let reference = owfid::transcript_counts(&suite, pk, &secrets[0], &m);
            for (x, t, a) in reference.keys() {
                let ok = owfid::verify(&suite.fork(), pk, x, &m, t, a).is_accept();
                ensure(ok, || "enumerated transcript does not verify".into())?;
            }
            ensure(reference.values().all(|c| *c == 1), || "uneven witness counts".into())?;
            for sk in &secrets[1..] {
                ensure(owfid::transcript_counts(&suite, pk, sk, &m) == reference, || "distributions differ".into())?;
            }
            transcripts += reference.len();
        }
    }
    Ok(format!("{transcripts} accepted transcripts, equal witness counts under all 13 secrets of each key"))
}

fn fuzz_frames(n: u64) -> Result<(), String> {
    let mut rng = ChaCha20Rng::seed_from_u64(141);
    for i in 0..n {
        let tag = Tag::ALL[rng.gen_range(0..Tag::ALL.len())];
        let len = rng.gen_range(0..512);
        let payload: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        let frame = Frame::new(tag, payload);
        let bytes = frame_encode(&frame);
        ensure(bytes.len() == frame.payload.len() + 5, || format!("case {i}: length"))?;
        ensure(frame_decode(&bytes).ok().as_ref() == Some(&frame), || format!("case {i}: round trip"))?;
        let mut cursor = std::io::Cursor::new(bytes);
        ensure(read_frame(&mut cursor).ok().as_ref() == Some(&frame), || format!("case {i}: stream read"))?;
    }
    Ok(())
}

/// One TCP loopback session; returns the verifier's transcript record text
/// and the in-process transcript record text for the same seed.
fn loopback<B: Backend>(suite: &GroupSuite<B>, key: &SchemeKeyPair<B>, seed: u64) -> Result<(String, String), String> {
    let listener = TcpListener::bind("127.0.0.1:0").map_err(|e| e.to_string())?;
    let addr = listener.local_addr().map_err(|e| e.to_string())?;
    let backend = suite.backend().clone();
    let prover_key = key.clone();
    let server = thread::spawn(move || {
        let (mut stream, _) = listener.accept().map_err(|e| e.to_string())?;
        let suite = GroupSuite::new(backend);
        serve_prover(&suite, &prover_key, &mut stream, seed).map_err(|e| e.to_string())
    });
    let mut stream = TcpStream::connect(addr).map_err(|e| e.to_string())?;
    let wired = run_verifier(&suite.fork(), &key.public, &mut stream, seed).map_err(|e| e.to_string())?;
    let served = server.join().map_err(|_| "prover thread panicked".to_string())?;
    let local = run_session(key.scheme(), key, &suite.fork(), seed).map_err(|e| e.to_string())?;
    let codec = MessageCodec::new(suite.backend(), key.public.challenge_bits());
    if local.decision.is_accept() {
        let served = served?;
        ensure(served == wired, || "prover and verifier transcripts differ".into())?;
    }
    Ok((wired.to_record(&codec).to_string(), local.to_record(&codec).to_string()))
}

fn loopback_suite<B: Backend>(suite: &GroupSuite<B>, seeds: u64) -> Result<u64, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(142);
    let mut n = 0;
    for scheme in SchemeId::ALL {
        let key = keygen(scheme, suite, &mut rng).map_err(|e| e.to_string())?;
        for seed in 0..seeds {
            let (wired, local) = loopback(suite, &key, seed)?;
            ensure(wired == local, || format!("{scheme} seed {seed}: wire transcript differs"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn wire() -> Outcome {
    let cases = 10_000;
    fuzz_frames(cases)?;
    let t = loopback_suite(&transparent(1009), 5)?;
    let c = loopback_suite(&curve(CurveParams::q83()), 3)?;
    Ok(format!("{cases} frames round-trip; {} loopback sessions byte-identical to in-process runs", t + c))
}
