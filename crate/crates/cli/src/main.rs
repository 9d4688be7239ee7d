//! `pairid`: key generation, identification sessions over TCP or stdio,
//! signatures, the cost benchmark and the reduction lab.

mod bench;
mod keys;
mod lab;
mod session;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairid::algebra::{BackendKind, GroupSuite, Transparent};
use pairid::curve::{CurveParams, TateBackend};
use pairid::files::FileError;
use pairid::id::SchemeId;
use pairid::record::{Record, RecordError};
use pairid::wire::WireError;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("rejected")]
    Rejected,
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error(transparent)]
    Wire(#[from] WireError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::File(_) | CliError::Record(_) | CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "pairid", version, about = "Pairing-based identification schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a key pair.
    Keygen(keys::KeygenArgs),
    /// Run the prover side of one session.
    Prove(session::ProveArgs),
    /// Run the verifier side of one session.
    Verify(session::VerifyArgs),
    /// Sign a message with a BLS (BLSID key) or BB (SDHID key) signature.
    Sign(keys::SignArgs),
    /// Verify a signature file.
    Sigverify(keys::SigverifyArgs),
    /// Measure per-session costs and compare with the expected cost table.
    Bench(bench::BenchArgs),
    /// Run a reduction or oracle game and print its report.
    Lab(lab::LabArgs),
    /// Run the acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Transparent,
    #[value(alias = "tate", alias = "curve")]
    TateCurve,
}

impl From<BackendArg> for BackendKind {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Transparent => BackendKind::Transparent,
            BackendArg::TateCurve => BackendKind::TateCurve,
        }
    }
}

/// Backend selection shared by commands that build a suite from flags.
#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    #[arg(long, value_enum, default_value = "transparent")]
    pub backend: BackendArg,
    /// Group order. Curve backends ship p = 5, 7 and 131.
    #[arg(long)]
    pub p: Option<u64>,
}

pub enum AnySuite {
    Transparent(GroupSuite<Transparent>),
    Curve(GroupSuite<TateBackend>),
}

impl SuiteArgs {
    pub fn build(&self, default_p: u64) -> CliResult<AnySuite> {
        match self.backend {
            BackendArg::Transparent => {
                let p = self.p.unwrap_or(default_p);
                let b = Transparent::new(p).map_err(|e| CliError::Usage(format!("--p {p}: {e}")))?;
                Ok(AnySuite::Transparent(GroupSuite::new(b)))
            }
            BackendArg::TateCurve => {
                let p = self.p.unwrap_or(131);
                let params = CurveParams::for_subgroup(p)
                    .ok_or_else(|| CliError::Usage(format!("no curve with subgroup order {p}; use 5, 7 or 131")))?;
                Ok(AnySuite::Curve(GroupSuite::new(TateBackend::new(params))))
            }
        }
    }
}

pub fn parse_scheme(name: &str) -> CliResult<SchemeId> {
    let lower = name.to_ascii_lowercase();
    let name = match lower.as_str() {
        "bls" => "blsid",
        "bb" => "sdhid",
        other => other,
    };
    SchemeId::from_name(name).ok_or_else(|| {
        CliError::Usage(format!("unknown scheme `{name}`; expected blsid, cdhid, sdhid, owfid, scl or hls"))
    })
}

pub fn rng_from(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

pub fn read_record(path: &Path) -> CliResult<Record> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(Record::parse(&text)?)
}

pub fn write_text(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn selftest(args: &SelftestArgs) -> CliResult {
    let ids: Vec<u8> = if args.only.is_empty() {
        pairid::checks::CRITERIA.iter().map(|(id, _)| *id).collect()
    } else {
        args.only.clone()
    };
    let mut failed = 0;
    for id in ids {
        if !(1..=14).contains(&id) {
            return Err(CliError::Usage(format!("no criterion {id}")));
        }
        let r = pairid::checks::run_check(id);
        println!("{r}");
        failed += !r.pass as u32;
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} criteria failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Keygen(a) => keys::keygen(a),
        Command::Prove(a) => session::prove(a),
        Command::Verify(a) => session::verify(a),
        Command::Sign(a) => keys::sign(a),
        Command::Sigverify(a) => keys::sigverify(a),
        Command::Bench(a) => bench::bench(a),
        Command::Lab(a) => lab::lab(a),
        Command::Selftest(a) => selftest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Rejected) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pairid: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
