use std::time::Instant;

use clap::{Args, ValueEnum};
use pairid::algebra::{DiscreteLog, GroupSuite};
use pairid::id::{cdhid, keygen};
use pairid::lab::{
    estimate_success, heavy_row_stats, invert_to_cdh, invert_to_ddh, mitm_relay_demo, om_cdh_game, owfid_inverter,
    BlsidReduction, CdhidReduction, InverterConfig, NoisyInverter, ProbeMode, ScriptedAttacker, SummaryMatrix,
};
use pairid::report::GameReport;
use pairid::sig::{forgery_game, ForgeryGameConfig, SigScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::{parse_scheme, AnySuite, CliError, CliResult, SuiteArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Game {
    /// CDHID impersonator turned one-more-CDH solver.
    Omcdh,
    /// BLSID impersonator turned BLS forger.
    Forgery,
    /// Pairing inverter turned CDH solver.
    InvertCdh,
    /// Pairing inverter turned DDH decider in G2.
    InvertDdh,
    /// Heavy-row mass of random success matrices.
    Heavyrow,
    /// OWFID impersonator turned pairing inverter.
    Extractor,
    /// Man-in-the-middle relay.
    Mitm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Iterated,
    SingleShot,
}

#[derive(Args, Debug)]
pub struct LabArgs {
    #[arg(long, value_enum)]
    game: Game,
    #[command(flatten)]
    suite: SuiteArgs,
    #[arg(long)]
    trials: Option<u64>,
    /// Success rate of the scripted attacker or inverter; density for heavyrow.
    #[arg(long)]
    eps: Option<f64>,
    /// Prover sessions (or signing queries) granted to the attacker.
    #[arg(long)]
    q: Option<u64>,
    /// Challenge bits for forgery; matrix side for heavyrow.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "iterated")]
    mode: ModeArg,
    /// Scheme relayed by mitm.
    #[arg(long, default_value = "cdhid")]
    scheme: String,
    /// Flip this bit of the relayed response.
    #[arg(long)]
    flip_bit: Option<usize>,
}

fn eps_arg(args: &LabArgs, default: f64) -> CliResult<f64> {
    let eps = args.eps.unwrap_or(default);
    if !(0.0..=1.0).contains(&eps) {
        return Err(CliError::Usage(format!("--eps {eps} is not a probability")));
    }
    Ok(eps)
}

fn omcdh<B: DiscreteLog>(suite: &GroupSuite<B>, args: &LabArgs) -> CliResult<GameReport> {
    let eps = eps_arg(args, 0.3)?;
    let q = args.q.unwrap_or(3);
    let trials = args.trials.unwrap_or(1000);
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let key = cdhid::keygen(suite, &mut rng);
    let mut attacker = ScriptedAttacker::new(eps, q);
    let est_trials = 5 * trials;
    let est = estimate_success(&mut attacker, suite, &key, q, est_trials, rng.gen())
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let eps_hat = est as f64 / est_trials as f64;
    let mut red = CdhidReduction::new(attacker);
    let mut r = om_cdh_game(&mut red, suite, q, trials, rng.gen()).param("eps", eps);
    r.add_queries("prover", red.interactions);
    r.add_queries("excess_runs", red.excess_query_runs);
    r.check_near(&format!("attacker success {eps_hat:.4}"), eps_hat);
    Ok(r)
}

fn forgery<B: DiscreteLog>(suite: &GroupSuite<B>, args: &LabArgs) -> CliResult<GameReport> {
    let eps = eps_arg(args, 1.0)?;
    let q = args.q.unwrap_or(8);
    let n = args.n.unwrap_or(4);
    if !(1..=32).contains(&n) || q > 1 << n {
        return Err(CliError::Usage(format!("need 1 <= n <= 32 and q <= 2^n, got n={n}, q={q}")));
    }
    let trials = args.trials.unwrap_or(1000);
    let mut f = BlsidReduction::new(ScriptedAttacker::new(eps, q), q, n);
    let config = ForgeryGameConfig { q_s: q, q_h: 0, trials, seed: args.seed };
    let mut r = forgery_game(SigScheme::Bls, &mut f, suite, config).param("eps", eps).param("n", n);
    r.add_queries("collisions", f.collisions);
    r.add_queries("attack_failures", f.attack_failures);
    let bound = eps * (1.0 - q as f64 / (1u64 << n) as f64);
    r.check_near("eps (1 - q / 2^n)", bound);
    Ok(r)
}

fn invert_cdh<B: DiscreteLog>(suite: &GroupSuite<B>, args: &LabArgs) -> CliResult<GameReport> {
    let eps = eps_arg(args, 0.7)?;
    let trials = args.trials.unwrap_or(1000);
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let mut inv = NoisyInverter { eps };
    let start = Instant::now();
    let mut r = GameReport::new("invert-cdh").param("p", suite.order()).param("eps", eps);
    for _ in 0..trials {
        let g = suite.random_g1_generator(&mut rng);
        let (a, b) = (suite.random_scalar(&mut rng), suite.random_scalar(&mut rng));
        let (ga, gb) = (suite.g1_exp(&g, &a), suite.g1_exp(&g, &b));
        let z = invert_to_cdh(&mut inv, suite, &g, &ga, &gb, &mut rng);
        r.record_trial(z == suite.g1_exp(&g, &(a * b)));
    }
    r.elapsed = start.elapsed();
    r.check_at_least("eps", eps);
    Ok(r)
}

fn invert_ddh<B: DiscreteLog>(suite: &GroupSuite<B>, args: &LabArgs) -> CliResult<GameReport> {
    let eps = eps_arg(args, 0.7)?;
    let trials = args.trials.unwrap_or(1000);
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let mut inv = NoisyInverter { eps };
    let start = Instant::now();
    let mut r = GameReport::new("invert-ddh").param("p", suite.order()).param("eps", eps);
    for _ in 0..trials {
        let y = suite.random_g2_generator(&mut rng);
        let (a, b) = (suite.random_scalar(&mut rng), suite.random_scalar(&mut rng));
        let yc = suite.g2_exp(&y, &(a * b));
        let said_yes = invert_to_ddh(&mut inv, suite, &y, &suite.g2_exp(&y, &a), &suite.g2_exp(&y, &b), &yc, &mut rng);
        r.record_trial(said_yes);
    }
    r.elapsed = start.elapsed();
    r.check_at_least("eps^4", eps.powi(4));
    Ok(r)
}

fn heavyrow(args: &LabArgs) -> CliResult<GameReport> {
    let eps = eps_arg(args, 0.5)?;
    let n = args.n.unwrap_or(64);
    let trials = args.trials.unwrap_or(500);
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let start = Instant::now();
    let mut r = GameReport::new("heavyrow").param("size", n).param("density", eps);
    let mut mass = 0.0;
    for _ in 0..trials {
        let m = SummaryMatrix::from_fn(n, n, |_, _| rng.gen_bool(eps));
        let rep = heavy_row_stats(&m);
        mass += rep.heavy_mass;
        r.record_trial(rep.heavy_mass >= 0.5);
    }
    r.elapsed = start.elapsed();
    let mut r = r.param("mean_heavy_mass", format!("{:.4}", mass / trials.max(1) as f64));
    r.check_at_least("every matrix has heavy mass >= 1/2", 1.0);
    Ok(r)
}

fn extractor<B: DiscreteLog>(suite: &GroupSuite<B>, args: &LabArgs) -> CliResult<GameReport> {
    let eps = eps_arg(args, 0.5)?;
    let trials = args.trials.unwrap_or(500);
    let mode = match args.mode {
        ModeArg::Iterated => ProbeMode::Iterated,
        ModeArg::SingleShot => ProbeMode::SingleShot,
    };
    let q = args.q.unwrap_or(2);
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let mut attacker = ScriptedAttacker::new(eps, q);
    let config = InverterConfig { mode, eps: Some(eps), q, ..InverterConfig::default() };
    let start = Instant::now();
    let mut r = GameReport::new("extractor").param("p", suite.order()).param("eps", eps).param("mode", mode.name());
    let mut wrong = 0;
    for _ in 0..trials {
        let p = suite.random_g1_generator(&mut rng);
        let y = suite.random_g2(&mut rng);
        let won = match owfid_inverter(&mut attacker, suite, &p, &y, config, &mut rng) {
            Ok(z) if suite.pair_raw(&p, &z) == y => true,
            Ok(_) => {
                wrong += 1;
                false
            }
            Err(_) => false,
        };
        r.record_trial(won);
    }
    r.elapsed = start.elapsed();
    r.add_queries("wrong_preimages", wrong);
    match mode {
        ProbeMode::Iterated => r.check_at_least("3/16", 3.0 / 16.0),
        ProbeMode::SingleShot => r.check_at_least("eps^2/9", eps * eps / 9.0),
    };
    Ok(r)
}

fn mitm<B: DiscreteLog>(suite: &GroupSuite<B>, args: &LabArgs) -> CliResult<GameReport> {
    let scheme = parse_scheme(&args.scheme)?;
    let trials = args.trials.unwrap_or(100);
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let key = keygen(scheme, suite, &mut rng).map_err(|e| CliError::Failed(e.to_string()))?;
    let start = Instant::now();
    let mut r = GameReport::new("mitm").param("p", suite.order()).param("scheme", scheme);
    if let Some(bit) = args.flip_bit {
        r = r.param("flip_bit", bit);
    }
    let mut note = "";
    for _ in 0..trials {
        let rep =
            mitm_relay_demo(suite, &key, rng.gen(), args.flip_bit).map_err(|e| CliError::Failed(e.to_string()))?;
        note = rep.note;
        let accepted = rep.relayed.decision.is_accept();
        if args.flip_bit.is_none() && (!accepted || rep.relayed != rep.honest) {
            return Err(CliError::Failed("verbatim relay diverged from the honest session".into()));
        }
        r.record_trial(accepted);
    }
    r.elapsed = start.elapsed();
    if args.flip_bit.is_none() {
        r.check_at_least("relay always accepted", 1.0);
    }
    Ok(r.param("note", note))
}

fn lab_in<B: DiscreteLog>(suite: &GroupSuite<B>, args: &LabArgs) -> CliResult<GameReport> {
    match args.game {
        Game::Omcdh => omcdh(suite, args),
        Game::Forgery => forgery(suite, args),
        Game::InvertCdh => invert_cdh(suite, args),
        Game::InvertDdh => invert_ddh(suite, args),
        Game::Heavyrow => heavyrow(args),
        Game::Extractor => extractor(suite, args),
        Game::Mitm => mitm(suite, args),
    }
}

pub fn lab(args: &LabArgs) -> CliResult {
    let default_p = match args.game {
        Game::Extractor => 101,
        _ => 1009,
    };
    let report = match args.suite.build(default_p)? {
        AnySuite::Transparent(s) => lab_in(&s, args)?,
        AnySuite::Curve(s) => lab_in(&s, args)?,
    };
    print!("{}", report.to_record());
    match report.passed() {
        Some(false) => Err(CliError::Failed("bound not met".into())),
        _ => Ok(()),
    }
}
