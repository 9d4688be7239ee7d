//! Length-prefixed frames and the prover and verifier drivers that run a
//! session over any byte stream.
//!
//! A frame is a 4-byte big-endian length (payload size + 1), a tag byte and
//! the payload. Each connection carries one session:
//!
//! ```text
//! verifier -> hello        prover -> hello
//! prover   -> commitment   (three-move schemes only)
//! verifier -> challenge    prover -> response | error
//! verifier -> decision
//! ```

use std::fmt;
use std::io::{self, Read, Write};

use thiserror::Error;

use crate::algebra::{scalar_width, AlgebraError, Backend, BackendKind, GroupSuite};
use crate::id::session::session_rngs;
use crate::id::{
    Decision, MessageCodec, Prover, PublicKey, SchemeError, SchemeId, SchemeKeyPair, Transcript, Verifier,
};

/// Largest accepted frame length.
pub const MAX_FRAME: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    Hello = 0x01,
    Commitment = 0x02,
    Challenge = 0x03,
    Response = 0x04,
    Decision = 0x05,
    Error = 0x06,
}

impl Tag {
    pub const ALL: [Tag; 6] = [Tag::Hello, Tag::Commitment, Tag::Challenge, Tag::Response, Tag::Decision, Tag::Error];

    pub fn from_byte(b: u8) -> Option<Tag> {
        Self::ALL.into_iter().find(|t| *t as u8 == b)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error)]
pub enum WireError {
    #[error("short frame: need {needed} bytes, have {got}")]
    ShortFrame { needed: usize, got: usize },
    #[error("unknown frame tag {0:#04x}")]
    UnknownTag(u8),
    #[error("frame length {declared} does not fit {actual} bytes")]
    LengthMismatch { declared: u32, actual: usize },
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    #[error("verifier rejected")]
    VerifyReject,
    #[error("peer closed the connection")]
    TransportClosed,
    #[error("peer reported: {0}")]
    Peer(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub tag: Tag,
    pub payload: Vec<u8>,
}

impl Frame {
    pub fn new(tag: Tag, payload: Vec<u8>) -> Self {
        Self { tag, payload }
    }
}

pub fn frame_encode(frame: &Frame) -> Vec<u8> {
    let mut out = Vec::with_capacity(5 + frame.payload.len());
    out.extend_from_slice(&(frame.payload.len() as u32 + 1).to_be_bytes());
    out.push(frame.tag as u8);
    out.extend_from_slice(&frame.payload);
    out
}

/// Decodes exactly one frame occupying all of `bytes`.
pub fn frame_decode(bytes: &[u8]) -> Result<Frame, WireError> {
    if bytes.len() < 4 {
        return Err(WireError::ShortFrame { needed: 4, got: bytes.len() });
    }
    let declared = u32::from_be_bytes(bytes[..4].try_into().expect("4 bytes"));
    if declared == 0 || declared > MAX_FRAME {
        return Err(WireError::LengthMismatch { declared, actual: bytes.len() - 4 });
    }
    let needed = 4 + declared as usize;
    if bytes.len() < needed {
        return Err(WireError::ShortFrame { needed, got: bytes.len() });
    }
    if bytes.len() > needed {
        return Err(WireError::LengthMismatch { declared, actual: bytes.len() - 4 });
    }
    let tag = Tag::from_byte(bytes[4]).ok_or(WireError::UnknownTag(bytes[4]))?;
    Ok(Frame { tag, payload: bytes[5..].to_vec() })
}

fn read_full<R: Read + ?Sized>(r: &mut R, buf: &mut [u8]) -> Result<usize, io::Error> {
    let mut filled = 0;
    while filled < buf.len() {
        match r.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

pub fn read_frame<R: Read + ?Sized>(r: &mut R) -> Result<Frame, WireError> {
    let mut head = [0u8; 4];
    match read_full(r, &mut head)? {
        0 => return Err(WireError::TransportClosed),
        4 => {}
        got => return Err(WireError::ShortFrame { needed: 4, got }),
    }
    let declared = u32::from_be_bytes(head);
    if declared == 0 || declared > MAX_FRAME {
        return Err(WireError::LengthMismatch { declared, actual: 0 });
    }
    let mut body = vec![0u8; declared as usize];
    let got = read_full(r, &mut body)?;
    if got < body.len() {
        return Err(WireError::ShortFrame { needed: 4 + body.len(), got: 4 + got });
    }
    let tag = Tag::from_byte(body[0]).ok_or(WireError::UnknownTag(body[0]))?;
    body.remove(0);
    Ok(Frame { tag, payload: body })
}

pub fn write_frame<W: Write + ?Sized>(w: &mut W, frame: &Frame) -> Result<(), WireError> {
    w.write_all(&frame_encode(frame))?;
    w.flush()?;
    Ok(())
}

/// Session parameters both sides must agree on before any protocol message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hello {
    pub scheme: SchemeId,
    pub backend: BackendKind,
    pub p: u64,
    /// Base field size for curve backends, 0 otherwise.
    pub q: u64,
    /// BLSID challenge bits, 0 for other schemes.
    pub n: u16,
    /// Scalar encoding width in bytes.
    pub width: u8,
}

impl Hello {
    pub const LEN: usize = 21;

    pub fn for_key<B: Backend>(suite: &GroupSuite<B>, pk: &PublicKey<B>) -> Self {
        Self {
            scheme: pk.scheme(),
            backend: suite.kind(),
            p: suite.order(),
            q: suite.backend().base_field().unwrap_or(0),
            n: pk.challenge_bits() as u16,
            width: scalar_width(suite.order()) as u8,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![self.scheme.tag(), self.backend.tag()];
        out.extend_from_slice(&self.p.to_be_bytes());
        out.extend_from_slice(&self.q.to_be_bytes());
        out.extend_from_slice(&self.n.to_be_bytes());
        out.push(self.width);
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, WireError> {
        let bad = |what: &str| WireError::ProtocolViolation(format!("malformed hello: {what}"));
        if bytes.len() != Self::LEN {
            return Err(bad("length"));
        }
        Ok(Self {
            scheme: SchemeId::from_tag(bytes[0]).ok_or_else(|| bad("scheme"))?,
            backend: BackendKind::from_tag(bytes[1]).ok_or_else(|| bad("backend"))?,
            p: u64::from_be_bytes(bytes[2..10].try_into().expect("8 bytes")),
            q: u64::from_be_bytes(bytes[10..18].try_into().expect("8 bytes")),
            n: u16::from_be_bytes(bytes[18..20].try_into().expect("2 bytes")),
            width: bytes[20],
        })
    }
}

fn send_error<S: Write + ?Sized>(stream: &mut S, msg: &str) {
    // Best effort: the session is already failing.
    let _ = write_frame(stream, &Frame::new(Tag::Error, msg.as_bytes().to_vec()));
}

fn expect<S: Read + Write + ?Sized>(stream: &mut S, tag: Tag) -> Result<Vec<u8>, WireError> {
    let frame = read_frame(stream)?;
    if frame.tag == Tag::Error {
        return Err(WireError::Peer(String::from_utf8_lossy(&frame.payload).into_owned()));
    }
    if frame.tag != tag {
        let msg = format!("expected {tag}, got {}", frame.tag);
        send_error(stream, &msg);
        return Err(WireError::ProtocolViolation(msg));
    }
    Ok(frame.payload)
}

fn check_hello<S: Write + ?Sized>(stream: &mut S, ours: &Hello, payload: &[u8]) -> Result<(), WireError> {
    let theirs = Hello::decode(payload)?;
    if theirs != *ours {
        let msg = format!("hello mismatch: ours {ours:?}, peer {theirs:?}");
        send_error(stream, &msg);
        return Err(WireError::ProtocolViolation(msg));
    }
    Ok(())
}

/// Runs the prover side of one session. Coins come from `seed` exactly as
/// in [`crate::id::run_session`].
pub fn serve_prover<B: Backend, S: Read + Write + ?Sized>(
    suite: &GroupSuite<B>,
    key: &SchemeKeyPair<B>,
    stream: &mut S,
    seed: u64,
) -> Result<Transcript<B>, WireError> {
    let scheme = key.scheme();
    let codec = MessageCodec::new(suite.backend(), key.public.challenge_bits());
    let hello = Hello::for_key(suite, &key.public);
    let peer = expect(stream, Tag::Hello)?;
    check_hello(stream, &hello, &peer)?;
    write_frame(stream, &Frame::new(Tag::Hello, hello.encode()))?;

    let (coins, _) = session_rngs(seed);
    let mut prover = Prover::new(suite, key, coins);
    let commitment = prover.commit()?.unwrap_or_default();
    if scheme.has_commitment() {
        write_frame(stream, &Frame::new(Tag::Commitment, codec.encode(&commitment)))?;
    }
    let payload = expect(stream, Tag::Challenge)?;
    let challenge = match codec.decode(scheme.challenge_shape(), &payload) {
        Ok(c) => c,
        Err(e) => {
            send_error(stream, "malformed challenge");
            return Err(e.into());
        }
    };
    let response = match prover.respond(&challenge) {
        Ok(r) => r,
        Err(e) => {
            send_error(stream, &e.to_string());
            return Err(e.into());
        }
    };
    write_frame(stream, &Frame::new(Tag::Response, codec.encode(&response)))?;
    let payload = expect(stream, Tag::Decision)?;
    let decision = match payload.as_slice() {
        [1] => Decision::Accept,
        [0] => Decision::Reject,
        _ => return Err(WireError::ProtocolViolation("malformed decision".into())),
    };
    if !decision.is_accept() {
        return Err(WireError::VerifyReject);
    }
    Ok(Transcript { scheme, commitment, challenge, response, decision, seed })
}

/// Runs the verifier side of one session and returns its transcript. A
/// prover that aborts or sends an undecodable response is rejected.
pub fn run_verifier<B: Backend, S: Read + Write + ?Sized>(
    suite: &GroupSuite<B>,
    pk: &PublicKey<B>,
    stream: &mut S,
    seed: u64,
) -> Result<Transcript<B>, WireError> {
    let scheme = pk.scheme();
    let codec = MessageCodec::new(suite.backend(), pk.challenge_bits());
    let hello = Hello::for_key(suite, pk);
    write_frame(stream, &Frame::new(Tag::Hello, hello.encode()))?;
    let peer = expect(stream, Tag::Hello)?;
    check_hello(stream, &hello, &peer)?;

    let (_, coins) = session_rngs(seed);
    let mut verifier = Verifier::new(suite, pk, coins);
    let mut commitment = Vec::new();
    if scheme.has_commitment() {
        let payload = expect(stream, Tag::Commitment)?;
        commitment = match codec.decode(scheme.commitment_shape(), &payload) {
            Ok(c) => c,
            Err(e) => {
                send_error(stream, "malformed commitment");
                return Err(e.into());
            }
        };
        verifier.receive_commitment(&commitment)?;
    }
    let challenge = verifier.challenge()?;
    write_frame(stream, &Frame::new(Tag::Challenge, codec.encode(&challenge)))?;

    let frame = read_frame(stream)?;
    let (response, decision) = match frame.tag {
        Tag::Response => match codec.decode(scheme.response_shape(), &frame.payload) {
            Ok(r) => {
                let d = verifier.decide(&r).unwrap_or(Decision::Reject);
                (r, d)
            }
            Err(_) => (Vec::new(), Decision::Reject),
        },
        Tag::Error => (Vec::new(), Decision::Reject),
        other => {
            let msg = format!("expected Response, got {other}");
            send_error(stream, &msg);
            return Err(WireError::ProtocolViolation(msg));
        }
    };
    write_frame(stream, &Frame::new(Tag::Decision, vec![decision.is_accept() as u8]))?;
    Ok(Transcript { scheme, commitment, challenge, response, decision, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_frame() {
        let f = Frame::new(Tag::Challenge, vec![0x00, 0x03]);
        let bytes = frame_encode(&f);
        assert_eq!(bytes, [0, 0, 0, 3, 3, 0, 3]);
        assert_eq!(frame_decode(&bytes).unwrap(), f);
    }

    #[test]
    fn decode_errors() {
        assert!(matches!(frame_decode(&[0, 0, 0, 3, 3, 0]), Err(WireError::ShortFrame { .. })));
        assert!(matches!(frame_decode(&[0, 0]), Err(WireError::ShortFrame { .. })));
        assert!(matches!(frame_decode(&[0, 0, 0, 1, 0x7f]), Err(WireError::UnknownTag(0x7f))));
        assert!(matches!(frame_decode(&[0, 0, 0, 1, 3, 9]), Err(WireError::LengthMismatch { .. })));
        assert!(matches!(frame_decode(&[0, 0, 0, 0]), Err(WireError::LengthMismatch { .. })));
    }

    #[test]
    fn stream_reads() {
        let mut bytes = frame_encode(&Frame::new(Tag::Hello, vec![1, 2, 3]));
        bytes.extend(frame_encode(&Frame::new(Tag::Decision, vec![1])));
        let mut cursor = io::Cursor::new(bytes);
        assert_eq!(read_frame(&mut cursor).unwrap().payload, [1, 2, 3]);
        assert_eq!(read_frame(&mut cursor).unwrap().tag, Tag::Decision);
        assert!(matches!(read_frame(&mut cursor), Err(WireError::TransportClosed)));
        let mut cut = io::Cursor::new(vec![0, 0, 0, 5, 4, 1]);
        assert!(matches!(read_frame(&mut cut), Err(WireError::ShortFrame { .. })));
    }

    #[test]
    fn hello_round_trip() {
        let h = Hello { scheme: SchemeId::Owfid, backend: BackendKind::TateCurve, p: 7, q: 83, n: 0, width: 2 };
        assert_eq!(Hello::decode(&h.encode()).unwrap(), h);
        assert_eq!(h.encode().len(), Hello::LEN);
    }
}
