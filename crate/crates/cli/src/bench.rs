use clap::Args;
use pairid::algebra::{Backend, GroupSuite};
use pairid::cost::CostTable;
use pairid::id::SchemeId;

use crate::{parse_scheme, AnySuite, CliError, CliResult, SuiteArgs};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Measure one scheme.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    scheme: Option<String>,
    /// Measure all six schemes.
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    suite: SuiteArgs,
    /// Sessions per scheme; every one must cost the same.
    #[arg(long, default_value_t = 100)]
    sessions: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn bench_in<B: Backend>(suite: &GroupSuite<B>, schemes: &[SchemeId], args: &BenchArgs) -> CliResult {
    if args.sessions == 0 {
        return Err(CliError::Usage("--sessions must be positive".into()));
    }
    let table =
        CostTable::measure(suite, schemes, args.sessions, args.seed).map_err(|e| CliError::Failed(e.to_string()))?;
    print!("{table}");
    if table.all_match() {
        Ok(())
    } else {
        Err(CliError::Failed("measured costs differ from the expected cost table".into()))
    }
}

pub fn bench(args: &BenchArgs) -> CliResult {
    let schemes = match &args.scheme {
        Some(name) => vec![parse_scheme(name)?],
        None => SchemeId::ALL.to_vec(),
    };
    match args.suite.build(1009)? {
        AnySuite::Transparent(s) => bench_in(&s, &schemes, args),
        AnySuite::Curve(s) => bench_in(&s, &schemes, args),
    }
}
