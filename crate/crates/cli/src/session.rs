use std::io::{self, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::PathBuf;
use std::thread;
use std::time::{Duration, Instant};

use clap::Args;
use pairid::algebra::{Backend, BackendKind, GroupSuite, Transparent};
use pairid::curve::TateBackend;
use pairid::files;
use pairid::id::{MessageCodec, PublicKey, SchemeId, Transcript};
use pairid::record::Record;
use pairid::wire::{read_frame, run_verifier, serve_prover, write_frame, Frame, Tag, WireError};
use rand::Rng;

use crate::{parse_scheme, read_record, rng_from, write_text, CliError, CliResult};

const SESSION_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Args, Debug)]
#[group(id = "prover_transport", required = true, multiple = false)]
pub struct ListenOrStdio {
    /// Accept one connection on this address, e.g. 127.0.0.1:7000.
    #[arg(long, group = "prover_transport")]
    listen: Option<String>,
    /// Speak the protocol on stdin and stdout.
    #[arg(long, group = "prover_transport")]
    stdio: bool,
}

#[derive(Args, Debug)]
pub struct ProveArgs {
    #[arg(long)]
    key: PathBuf,
    #[command(flatten)]
    transport: ListenOrStdio,
    /// Scheme the key must be for.
    #[arg(long)]
    scheme: Option<String>,
    /// Seed for the session coins; random when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the session transcript here.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "verifier_transport", required = true, multiple = false)]
pub struct ConnectOrStdio {
    /// Connect to a listening prover.
    #[arg(long, group = "verifier_transport")]
    connect: Option<String>,
    #[arg(long, group = "verifier_transport")]
    stdio: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Public key (or full key) file.
    #[arg(long)]
    pk: PathBuf,
    #[command(flatten)]
    transport: ConnectOrStdio,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    transcript: Option<PathBuf>,
    /// Keep retrying the connection for this many seconds.
    #[arg(long, default_value_t = 10)]
    wait: u64,
}

/// stdin and stdout as one duplex stream.
struct StdioStream {
    stdin: io::Stdin,
    stdout: io::Stdout,
}

impl StdioStream {
    fn new() -> Self {
        Self { stdin: io::stdin(), stdout: io::stdout() }
    }
}

impl Read for StdioStream {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        self.stdin.lock().read(buf)
    }
}

impl Write for StdioStream {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.stdout.lock().write(buf)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.stdout.lock().flush()
    }
}

trait Duplex: Read + Write {}

impl<T: Read + Write> Duplex for T {}

/// `Some(reason)` when `--scheme` names a scheme other than the key's.
fn scheme_conflict(flag: &Option<String>, found: SchemeId) -> CliResult<Option<String>> {
    match flag {
        Some(name) => {
            let want = parse_scheme(name)?;
            Ok((want != found).then(|| format!("asked for {want} but holds a {found} key")))
        }
        None => Ok(None),
    }
}

/// Fails the session at the hello exchange: reads the peer's hello (if it
/// speaks first) and answers with an error frame.
fn refuse(stream: &mut dyn Duplex, read_first: bool, reason: String) -> CliError {
    if read_first {
        let _ = read_frame(stream);
    }
    let _ = write_frame(stream, &Frame::new(Tag::Error, reason.clone().into_bytes()));
    CliError::Wire(WireError::ProtocolViolation(reason))
}

fn save_transcript<B: Backend>(
    path: &Option<PathBuf>,
    suite: &GroupSuite<B>,
    pk: &PublicKey<B>,
    t: &Transcript<B>,
) -> CliResult {
    if let Some(path) = path {
        let codec = MessageCodec::new(suite.backend(), pk.challenge_bits());
        let mut rec = Record::new();
        rec.push("file", "transcript");
        rec.extend(&t.to_record(&codec));
        write_text(path, &rec.to_string())?;
    }
    Ok(())
}

fn tcp_stream(stream: TcpStream) -> CliResult<TcpStream> {
    let io = |e: io::Error| CliError::Wire(WireError::Io(e));
    stream.set_read_timeout(Some(SESSION_TIMEOUT)).map_err(io)?;
    stream.set_write_timeout(Some(SESSION_TIMEOUT)).map_err(io)?;
    stream.set_nodelay(true).map_err(io)?;
    Ok(stream)
}

fn prove_in<B: Backend>(rec: &Record, args: &ProveArgs) -> CliResult {
    let suite: GroupSuite<B> = files::suite_from_record(rec)?;
    let key = files::key_from_record(&suite, rec)?;
    let conflict = scheme_conflict(&args.scheme, key.scheme())?;
    let seed = args.seed.unwrap_or_else(|| rng_from(None).gen());
    let mut stream: Box<dyn Duplex> = if args.transport.stdio {
        Box::new(StdioStream::new())
    } else {
        let addr = args.transport.listen.as_deref().expect("clap enforces one transport");
        let listener = TcpListener::bind(addr).map_err(|e| CliError::Usage(format!("cannot listen on {addr}: {e}")))?;
        eprintln!("listening on {}", listener.local_addr().map_err(WireError::Io)?);
        let (stream, peer) = listener.accept().map_err(WireError::Io)?;
        eprintln!("session with {peer}");
        Box::new(tcp_stream(stream)?)
    };
    if let Some(reason) = conflict {
        return Err(refuse(&mut *stream, true, format!("prover {reason}")));
    }
    match serve_prover(&suite, &key, &mut *stream, seed) {
        Ok(t) => {
            save_transcript(&args.transcript, &suite, &key.public, &t)?;
            eprintln!("accepted");
            Ok(())
        }
        Err(WireError::VerifyReject) => {
            eprintln!("rejected");
            Err(CliError::Rejected)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn prove(args: &ProveArgs) -> CliResult {
    let rec = read_record(&args.key)?;
    match files::backend_kind(&rec)? {
        BackendKind::Transparent => prove_in::<Transparent>(&rec, args),
        BackendKind::TateCurve => prove_in::<TateBackend>(&rec, args),
    }
}

fn connect(addr: &str, wait: Duration) -> CliResult<TcpStream> {
    let start = Instant::now();
    loop {
        match TcpStream::connect(addr) {
            Ok(s) => return tcp_stream(s),
            Err(e) if start.elapsed() >= wait => return Err(WireError::Io(e).into()),
            Err(_) => thread::sleep(Duration::from_millis(50)),
        }
    }
}

fn verify_in<B: Backend>(rec: &Record, args: &VerifyArgs) -> CliResult {
    let suite: GroupSuite<B> = files::suite_from_record(rec)?;
    let pk = files::public_from_record(&suite, rec)?;
    let conflict = scheme_conflict(&args.scheme, pk.scheme())?;
    let seed = args.seed.unwrap_or_else(|| rng_from(None).gen());
    let mut stream: Box<dyn Duplex> = if args.transport.stdio {
        Box::new(StdioStream::new())
    } else {
        let addr = args.transport.connect.as_deref().expect("clap enforces one transport");
        Box::new(connect(addr, Duration::from_secs(args.wait))?)
    };
    if let Some(reason) = conflict {
        return Err(refuse(&mut *stream, false, format!("verifier {reason}")));
    }
    let transcript = run_verifier(&suite, &pk, &mut *stream, seed)?;
    save_transcript(&args.transcript, &suite, &pk, &transcript)?;
    if transcript.decision.is_accept() {
        eprintln!("accept");
        Ok(())
    } else {
        eprintln!("reject");
        Err(CliError::Rejected)
    }
}

pub fn verify(args: &VerifyArgs) -> CliResult {
    let rec = read_record(&args.pk)?;
    match files::backend_kind(&rec)? {
        BackendKind::Transparent => verify_in::<Transparent>(&rec, args),
        BackendKind::TateCurve => verify_in::<TateBackend>(&rec, args),
    }
}
