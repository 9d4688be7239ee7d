use std::path::PathBuf;

use clap::Args;
use pairid::algebra::{Backend, BackendKind, GroupSuite, Transparent};
use pairid::curve::TateBackend;
use pairid::files::{self, check_sig_key, SignedMessage};
use pairid::id::{keygen_with_params, PublicKey, SchemeParams, SecretKey};
use pairid::record::Record;
use pairid::sig::hash::{BitString, HashMode};
use pairid::sig::{bb, bls, SigScheme};

use crate::{parse_scheme, read_record, rng_from, write_text, AnySuite, CliError, CliResult, SuiteArgs};

#[derive(Args, Debug)]
pub struct KeygenArgs {
    /// blsid, cdhid, sdhid, owfid, scl or hls (bls and bb name the matching signature keys).
    #[arg(long)]
    scheme: String,
    #[command(flatten)]
    suite: SuiteArgs,
    /// BLSID challenge length in bits; defaults to the bit length of p.
    #[arg(long)]
    challenge_bits: Option<usize>,
    /// BLSID hash: test-vector, oracle:<hex key> or try-and-increment.
    #[arg(long)]
    hash: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    /// Also write the public half here.
    #[arg(long)]
    public_out: Option<PathBuf>,
}

fn keygen_in<B: Backend>(suite: &GroupSuite<B>, args: &KeygenArgs) -> CliResult {
    let scheme = parse_scheme(&args.scheme)?;
    let mut params = SchemeParams::default_for(suite.order(), suite.kind());
    if let Some(n) = args.challenge_bits {
        if n == 0 || n > 4096 {
            return Err(CliError::Usage(format!("--challenge-bits {n} out of range")));
        }
        params.challenge_bits = n;
    }
    if let Some(text) = &args.hash {
        params.hash =
            HashMode::from_text(text).ok_or_else(|| CliError::Usage(format!("unknown hash mode `{text}`")))?;
    }
    let mut rng = rng_from(args.seed);
    let key = keygen_with_params(scheme, suite, params, &mut rng).map_err(|e| CliError::Usage(e.to_string()))?;
    write_text(&args.out, &files::key_to_record(suite, &key).to_string())?;
    if let Some(path) = &args.public_out {
        write_text(path, &files::public_to_record(suite, &key.public).to_string())?;
    }
    println!("wrote {} key to {}", scheme, args.out.display());
    Ok(())
}

pub fn keygen(args: &KeygenArgs) -> CliResult {
    match args.suite.build(1009)? {
        AnySuite::Transparent(s) => keygen_in(&s, args),
        AnySuite::Curve(s) => keygen_in(&s, args),
    }
}

#[derive(Args, Debug)]
pub struct SignArgs {
    /// bls or bb.
    #[arg(long)]
    scheme: String,
    /// A BLSID key for bls, an SDHID key for bb.
    #[arg(long)]
    key: PathBuf,
    /// Bit string of 0s and 1s for bls; a nonzero integer below p for bb.
    #[arg(long)]
    message: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

fn sig_scheme(name: &str) -> CliResult<SigScheme> {
    SigScheme::from_name(name)
        .ok_or_else(|| CliError::Usage(format!("unknown signature scheme `{name}`; expected bls or bb")))
}

fn sign_in<B: Backend>(rec: &Record, args: &SignArgs) -> CliResult {
    let scheme = sig_scheme(&args.scheme)?;
    let suite: GroupSuite<B> = files::suite_from_record(rec)?;
    let key = files::key_from_record(&suite, rec)?;
    check_sig_key(scheme, key.scheme())?;
    let signed = match (&key.public, &key.secret) {
        (PublicKey::Blsid(pk), SecretKey::Blsid(sk)) => {
            let msg = BitString::from_binary(&args.message)
                .ok_or_else(|| CliError::Usage("bls messages are strings of 0 and 1".into()))?;
            let sigma = bls::sign(&suite, &sk.x, &msg, &pk.params.hash).map_err(|e| CliError::Failed(e.to_string()))?;
            SignedMessage::Bls { msg, sigma }
        }
        (PublicKey::Sdhid(_), SecretKey::Sdhid(sk)) => {
            let m: u64 = args.message.parse().map_err(|_| CliError::Usage("bb messages are integers".into()))?;
            if m == 0 || m >= suite.order() {
                return Err(CliError::Usage(format!("bb message must lie in 1..{}", suite.order())));
            }
            let m = suite.scalar(m);
            let mut rng = rng_from(args.seed);
            let s = bb::sign(&suite, sk, &m, &mut rng).map_err(|e| CliError::Failed(e.to_string()))?;
            SignedMessage::Bb { m, sigma: s.sigma, r: s.r }
        }
        _ => unreachable!("checked by check_sig_key"),
    };
    write_text(&args.out, &files::signature_to_record(&suite, &signed).to_string())?;
    println!("wrote {} signature to {}", scheme.name(), args.out.display());
    Ok(())
}

pub fn sign(args: &SignArgs) -> CliResult {
    let rec = read_record(&args.key)?;
    match files::backend_kind(&rec)? {
        BackendKind::Transparent => sign_in::<Transparent>(&rec, args),
        BackendKind::TateCurve => sign_in::<TateBackend>(&rec, args),
    }
}

#[derive(Args, Debug)]
pub struct SigverifyArgs {
    /// Public key (or full key) file.
    #[arg(long)]
    pk: PathBuf,
    #[arg(long)]
    sig: PathBuf,
    /// Expected scheme, bls or bb.
    #[arg(long)]
    scheme: Option<String>,
}

fn sigverify_in<B: Backend>(pk_rec: &Record, sig_rec: &Record, args: &SigverifyArgs) -> CliResult {
    let suite: GroupSuite<B> = files::suite_from_record(pk_rec)?;
    let pk = files::public_from_record(&suite, pk_rec)?;
    let signed = files::signature_from_record(&suite, sig_rec)?;
    if let Some(name) = &args.scheme {
        let want = sig_scheme(name)?;
        if want != signed.scheme() {
            return Err(CliError::Usage(format!("signature file holds a {} signature", signed.scheme().name())));
        }
    }
    check_sig_key(signed.scheme(), pk.scheme())?;
    let valid = match (&pk, &signed) {
        (PublicKey::Blsid(pk), SignedMessage::Bls { msg, sigma }) => {
            bls::verify(&suite, &pk.v, msg, sigma, &pk.params.hash)
        }
        (PublicKey::Sdhid(pk), SignedMessage::Bb { m, sigma, r }) => bb::verify(&suite, pk, m, sigma, r),
        _ => unreachable!("checked by check_sig_key"),
    };
    if valid {
        println!("valid");
        Ok(())
    } else {
        println!("invalid");
        Err(CliError::Rejected)
    }
}

pub fn sigverify(args: &SigverifyArgs) -> CliResult {
    let pk_rec = read_record(&args.pk)?;
    let sig_rec = read_record(&args.sig)?;
    match files::backend_kind(&pk_rec)? {
        BackendKind::Transparent => sigverify_in::<Transparent>(&pk_rec, &sig_rec, args),
        BackendKind::TateCurve => sigverify_in::<TateBackend>(&pk_rec, &sig_rec, args),
    }
}
