//! Key and signature files.
//!
//! Every file is a [`Record`] that starts with a `file` line naming its type,
//! followed by the backend description, so a file can be loaded without
//! knowing its suite in advance:
//!
//! ```text
//! file key
//! backend transparent
//! p 1009
//! generator 0001
//! scheme cdhid
//! public 01b7
//! secret 0123
//! ```
//!
//! Element lists are hex of the fixed-width message encoding. BLS signatures
//! use BLSID keys and BB signatures use SDHID keys.

use thiserror::Error;

use crate::algebra::{Backend, BackendKind, GroupSuite, Scalar};
use crate::id::{
    blsid, cdhid, hls, owfid, scl, sdhid, Component, Kind, Message, MessageCodec, PublicKey, SchemeId, SchemeKeyPair,
    SchemeParams, SecretKey,
};
use crate::record::{Record, RecordError};
use crate::sig::hash::{BitString, HashMode};
use crate::sig::SigScheme;

#[derive(Debug, Error)]
pub enum FileError {
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("expected a {expected} file, found {found}")]
    WrongFileType { expected: &'static str, found: String },
    #[error("file was written for backend {file}, loading into {suite}")]
    SuiteMismatch { file: String, suite: String },
    #[error("key components do not satisfy the {0} key equation")]
    InconsistentKey(SchemeId),
    #[error("{0} keys cannot be used for {1} signatures")]
    WrongSigScheme(SchemeId, &'static str),
}

pub const KEY_FILE: &str = "key";
pub const PUBLIC_FILE: &str = "public-key";
pub const SIGNATURE_FILE: &str = "signature";

/// Backend named by a file, read before the suite is built.
pub fn backend_kind(rec: &Record) -> Result<BackendKind, RecordError> {
    let name = rec.require("backend")?;
    BackendKind::from_name(name).ok_or_else(|| RecordError::invalid("backend", name))
}

pub fn file_type(rec: &Record) -> Result<&str, RecordError> {
    rec.require("file")
}

fn expect_type(rec: &Record, expected: &'static str) -> Result<(), FileError> {
    let found = file_type(rec)?;
    if found != expected {
        return Err(FileError::WrongFileType { expected, found: found.to_string() });
    }
    Ok(())
}

/// Rebuilds the suite a file was written for.
pub fn suite_from_record<B: Backend>(rec: &Record) -> Result<GroupSuite<B>, RecordError> {
    Ok(GroupSuite::new(B::from_record(rec)?))
}

fn check_suite<B: Backend>(suite: &GroupSuite<B>, rec: &Record) -> Result<(), FileError> {
    let theirs = B::from_record(rec)?;
    if &theirs != suite.backend() {
        return Err(FileError::SuiteMismatch {
            file: theirs.describe().to_string().replace('\n', " "),
            suite: suite.backend().describe().to_string().replace('\n', " "),
        });
    }
    Ok(())
}

pub fn public_shape(scheme: SchemeId) -> &'static [Kind] {
    match scheme {
        SchemeId::Blsid | SchemeId::Cdhid => &[Kind::G1],
        SchemeId::Sdhid => &[Kind::G1, Kind::G1, Kind::G2],
        SchemeId::Owfid => &[Kind::G1, Kind::G2, Kind::G2],
        SchemeId::Scl => &[Kind::G1, Kind::G1, Kind::G2],
        SchemeId::Hls => &[Kind::G1, Kind::G1, Kind::G1, Kind::G2, Kind::G2],
    }
}

pub fn secret_shape(scheme: SchemeId) -> &'static [Kind] {
    match scheme {
        SchemeId::Blsid | SchemeId::Cdhid | SchemeId::Scl => &[Kind::Scalar],
        SchemeId::Sdhid => &[Kind::Scalar, Kind::Scalar],
        SchemeId::Owfid => &[Kind::G1, Kind::Scalar],
        SchemeId::Hls => &[Kind::G1],
    }
}

pub fn public_components<B: Backend>(pk: &PublicKey<B>) -> Message<B> {
    use Component::{G1, G2};
    match pk {
        PublicKey::Blsid(k) => vec![G1(k.v.clone())],
        PublicKey::Cdhid(k) => vec![G1(k.v.clone())],
        PublicKey::Sdhid(k) => vec![G1(k.u.clone()), G1(k.v.clone()), G2(k.z.clone())],
        PublicKey::Owfid(k) => vec![G1(k.p.clone()), G2(k.y.clone()), G2(k.v.clone())],
        PublicKey::Scl(k) => vec![G1(k.g.clone()), G1(k.v.clone()), G2(k.z.clone())],
        PublicKey::Hls(k) => {
            vec![G1(k.p.clone()), G1(k.r.clone()), G1(k.s.clone()), G2(k.z.clone()), G2(k.v.clone())]
        }
    }
}

pub fn secret_components<B: Backend>(sk: &SecretKey<B>) -> Message<B> {
    use Component::{Scalar as S, G1};
    match sk {
        SecretKey::Blsid(k) => vec![S(k.x)],
        SecretKey::Cdhid(k) => vec![S(k.x)],
        SecretKey::Sdhid(k) => vec![S(k.x), S(k.y)],
        SecretKey::Owfid(k) => vec![G1(k.q.clone()), S(k.s)],
        SecretKey::Scl(k) => vec![S(k.x)],
        SecretKey::Hls(k) => vec![G1(k.q.clone())],
    }
}

fn g1<B: Backend>(c: &Component<B>) -> B::G1 {
    match c {
        Component::G1(a) => a.clone(),
        _ => unreachable!("shape checked by the codec"),
    }
}

fn g2<B: Backend>(c: &Component<B>) -> B::G2 {
    match c {
        Component::G2(a) => a.clone(),
        _ => unreachable!("shape checked by the codec"),
    }
}

fn scalar<B: Backend>(c: &Component<B>) -> Scalar {
    match c {
        Component::Scalar(s) => *s,
        _ => unreachable!("shape checked by the codec"),
    }
}

/// Inverse of [`public_components`]; `m` must have [`public_shape`].
pub fn public_from_components<B: Backend>(scheme: SchemeId, params: SchemeParams, m: &[Component<B>]) -> PublicKey<B> {
    match scheme {
        SchemeId::Blsid => PublicKey::Blsid(blsid::BlsidPublic { v: g1(&m[0]), params }),
        SchemeId::Cdhid => PublicKey::Cdhid(cdhid::CdhidPublic { v: g1(&m[0]) }),
        SchemeId::Sdhid => PublicKey::Sdhid(sdhid::SdhidPublic { u: g1(&m[0]), v: g1(&m[1]), z: g2(&m[2]) }),
        SchemeId::Owfid => PublicKey::Owfid(owfid::OwfidPublic { p: g1(&m[0]), y: g2(&m[1]), v: g2(&m[2]) }),
        SchemeId::Scl => PublicKey::Scl(scl::SclPublic { g: g1(&m[0]), v: g1(&m[1]), z: g2(&m[2]) }),
        SchemeId::Hls => {
            PublicKey::Hls(hls::HlsPublic { p: g1(&m[0]), r: g1(&m[1]), s: g1(&m[2]), z: g2(&m[3]), v: g2(&m[4]) })
        }
    }
}

pub fn secret_from_components<B: Backend>(scheme: SchemeId, m: &[Component<B>]) -> SecretKey<B> {
    match scheme {
        SchemeId::Blsid => SecretKey::Blsid(blsid::BlsidSecret { x: scalar(&m[0]) }),
        SchemeId::Cdhid => SecretKey::Cdhid(cdhid::CdhidSecret { x: scalar(&m[0]) }),
        SchemeId::Sdhid => SecretKey::Sdhid(sdhid::SdhidSecret { x: scalar(&m[0]), y: scalar(&m[1]) }),
        SchemeId::Owfid => SecretKey::Owfid(owfid::OwfidSecret { q: g1(&m[0]), s: scalar(&m[1]) }),
        SchemeId::Scl => SecretKey::Scl(scl::SclSecret { x: scalar(&m[0]) }),
        SchemeId::Hls => SecretKey::Hls(hls::HlsSecret { q: g1(&m[0]) }),
    }
}

fn params_of<B: Backend>(pk: &PublicKey<B>) -> Option<SchemeParams> {
    match pk {
        PublicKey::Blsid(k) => Some(k.params),
        _ => None,
    }
}

fn write_public<B: Backend>(suite: &GroupSuite<B>, pk: &PublicKey<B>, rec: &mut Record) {
    rec.extend(&suite.backend().describe());
    rec.push("scheme", pk.scheme().name());
    if let Some(params) = params_of(pk) {
        rec.push("challenge_bits", params.challenge_bits.to_string());
        rec.push("hash", params.hash.to_text());
    }
    let codec = MessageCodec::new(suite.backend(), 0);
    rec.push("public", hex::encode(codec.encode(&public_components(pk))));
}

fn read_public<B: Backend>(suite: &GroupSuite<B>, rec: &Record) -> Result<PublicKey<B>, FileError> {
    check_suite(suite, rec)?;
    let name = rec.require("scheme")?;
    let scheme = SchemeId::from_name(name).ok_or_else(|| RecordError::invalid("scheme", name))?;
    let params = if scheme == SchemeId::Blsid {
        let bits = rec.parse_u64("challenge_bits")? as usize;
        if bits == 0 || bits > 4096 {
            return Err(RecordError::invalid("challenge_bits", bits).into());
        }
        let text = rec.require("hash")?;
        let hash = HashMode::from_text(text).ok_or_else(|| RecordError::invalid("hash", text))?;
        SchemeParams { challenge_bits: bits, hash }
    } else {
        SchemeParams::default_for(suite.order(), suite.kind())
    };
    let codec = MessageCodec::new(suite.backend(), 0);
    let parts = codec.decode(public_shape(scheme), &rec.parse_hex("public")?).map_err(RecordError::from)?;
    Ok(public_from_components(scheme, params, &parts))
}

pub fn public_to_record<B: Backend>(suite: &GroupSuite<B>, pk: &PublicKey<B>) -> Record {
    let mut rec = Record::new();
    rec.push("file", PUBLIC_FILE);
    write_public(suite, pk, &mut rec);
    rec
}

pub fn key_to_record<B: Backend>(suite: &GroupSuite<B>, key: &SchemeKeyPair<B>) -> Record {
    let mut rec = Record::new();
    rec.push("file", KEY_FILE);
    write_public(suite, &key.public, &mut rec);
    let codec = MessageCodec::new(suite.backend(), 0);
    rec.push("secret", hex::encode(codec.encode(&secret_components(&key.secret))));
    rec
}

/// Loads a public key from either a public-key file or a full key file.
pub fn public_from_record<B: Backend>(suite: &GroupSuite<B>, rec: &Record) -> Result<PublicKey<B>, FileError> {
    let kind = file_type(rec)?;
    if kind != PUBLIC_FILE && kind != KEY_FILE {
        return Err(FileError::WrongFileType { expected: PUBLIC_FILE, found: kind.to_string() });
    }
    read_public(suite, rec)
}

/// Loads a key pair and checks its key equation.
pub fn key_from_record<B: Backend>(suite: &GroupSuite<B>, rec: &Record) -> Result<SchemeKeyPair<B>, FileError> {
    expect_type(rec, KEY_FILE)?;
    let public = read_public(suite, rec)?;
    let scheme = public.scheme();
    let codec = MessageCodec::new(suite.backend(), 0);
    let parts = codec.decode(secret_shape(scheme), &rec.parse_hex("secret")?).map_err(RecordError::from)?;
    let key = SchemeKeyPair { public, secret: secret_from_components(scheme, &parts) };
    if !key.is_consistent(suite) {
        return Err(FileError::InconsistentKey(scheme));
    }
    Ok(key)
}

/// A signed message with its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedMessage<B: Backend> {
    Bls { msg: BitString, sigma: B::G1 },
    Bb { m: Scalar, sigma: B::G1, r: Scalar },
}

impl<B: Backend> SignedMessage<B> {
    pub fn scheme(&self) -> SigScheme {
        match self {
            SignedMessage::Bls { .. } => SigScheme::Bls,
            SignedMessage::Bb { .. } => SigScheme::Bb,
        }
    }
}

/// The identification scheme whose keys a signature scheme uses.
pub fn key_scheme(scheme: SigScheme) -> SchemeId {
    match scheme {
        SigScheme::Bls => SchemeId::Blsid,
        SigScheme::Bb => SchemeId::Sdhid,
    }
}

/// Fails unless keys of `found` can produce `scheme` signatures.
pub fn check_sig_key(scheme: SigScheme, found: SchemeId) -> Result<(), FileError> {
    if key_scheme(scheme) != found {
        return Err(FileError::WrongSigScheme(found, scheme.name()));
    }
    Ok(())
}

pub fn signature_to_record<B: Backend>(suite: &GroupSuite<B>, sig: &SignedMessage<B>) -> Record {
    let codec = MessageCodec::new(suite.backend(), 0);
    let mut rec = Record::new();
    rec.push("file", SIGNATURE_FILE);
    rec.extend(&suite.backend().describe());
    rec.push("scheme", sig.scheme().name());
    let mut sigma = Vec::new();
    match sig {
        SignedMessage::Bls { msg, sigma: s } => {
            rec.push("message_bits", msg.len().to_string());
            rec.push("message", hex::encode(msg.as_bytes()));
            suite.backend().encode_g1(s, &mut sigma);
            rec.push("sigma", hex::encode(sigma));
        }
        SignedMessage::Bb { m, sigma: s, r } => {
            let mut buf = Vec::new();
            codec.encode_scalar(m, &mut buf);
            rec.push("message", hex::encode(&buf));
            suite.backend().encode_g1(s, &mut sigma);
            rec.push("sigma", hex::encode(sigma));
            buf.clear();
            codec.encode_scalar(r, &mut buf);
            rec.push("r", hex::encode(buf));
        }
    }
    rec
}

pub fn signature_from_record<B: Backend>(suite: &GroupSuite<B>, rec: &Record) -> Result<SignedMessage<B>, FileError> {
    expect_type(rec, SIGNATURE_FILE)?;
    check_suite(suite, rec)?;
    let name = rec.require("scheme")?;
    let scheme = SigScheme::from_name(name).ok_or_else(|| RecordError::invalid("scheme", name))?;
    let codec = MessageCodec::new(suite.backend(), 0);
    let sigma = suite.backend().decode_g1(&rec.parse_hex("sigma")?).map_err(RecordError::from)?;
    Ok(match scheme {
        SigScheme::Bls => {
            let bits = rec.parse_u64("message_bits")? as usize;
            let msg = BitString::from_packed(&rec.parse_hex("message")?, bits)
                .ok_or_else(|| RecordError::invalid("message", "length does not match message_bits"))?;
            SignedMessage::Bls { msg, sigma }
        }
        SigScheme::Bb => {
            let m = codec.decode_scalar(&rec.parse_hex("message")?).map_err(RecordError::from)?;
            let r = codec.decode_scalar(&rec.parse_hex("r")?).map_err(RecordError::from)?;
            SignedMessage::Bb { m, sigma, r }
        }
    })
}
