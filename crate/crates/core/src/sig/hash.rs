//! Bit-string messages and full-domain hashing into `G1`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{Backend, BackendKind, GroupSuite};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HashError {
    #[error("hash mode {mode} is not available on the {backend} backend")]
    ModeBackendMismatch { mode: &'static str, backend: BackendKind },
    #[error("try-and-increment found no curve point in 256 attempts")]
    Exhausted,
}

/// An element of `{0,1}^n`, packed big-endian into `⌈n/8⌉` bytes with the
/// unused high bits of the first byte cleared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    bytes: Vec<u8>,
}

impl BitString {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self { len: bytes.len() * 8, bytes: bytes.to_vec() }
    }

    /// Packs `bytes` as an `n`-bit string; `None` if it does not fit.
    pub fn from_packed(bytes: &[u8], len: usize) -> Option<Self> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let spare = bytes.len() * 8 - len;
        if spare > 0 && bytes[0] >> (8 - spare) != 0 {
            return None;
        }
        Some(Self { len, bytes: bytes.to_vec() })
    }

    /// Parses a string of `0` and `1` characters, most significant first.
    pub fn from_binary(text: &str) -> Option<Self> {
        let len = text.len();
        if len == 0 {
            return None;
        }
        let mut bytes = vec![0u8; len.div_ceil(8)];
        let spare = bytes.len() * 8 - len;
        for (i, c) in text.chars().enumerate() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                _ => return None,
            };
            let pos = spare + i;
            bytes[pos / 8] |= bit << (7 - pos % 8);
        }
        Some(Self { len, bytes })
    }

    pub fn to_binary(&self) -> String {
        let spare = self.bytes.len() * 8 - self.len;
        (spare..spare + self.len)
            .map(|pos| if self.bytes[pos / 8] >> (7 - pos % 8) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// The `n`-bit big-endian representation of `value`.
    pub fn from_integer(value: u64, len: usize) -> Self {
        assert!(len >= 64 || value < (1u64 << len), "value does not fit in {len} bits");
        let width = len.div_ceil(8);
        let mut bytes = vec![0u8; width];
        for (i, b) in bytes.iter_mut().rev().enumerate().take(8) {
            *b = (value >> (8 * i)) as u8;
        }
        Self { len, bytes }
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let width = len.div_ceil(8);
        let mut bytes = vec![0u8; width];
        rng.fill(bytes.as_mut_slice());
        let spare = width * 8 - len;
        if spare > 0 {
            bytes[0] &= 0xff >> spare;
        }
        Self { len, bytes }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Big-endian integer value reduced mod `m`.
    pub fn to_integer_mod(&self, m: u64) -> u64 {
        self.bytes.iter().fold(0u64, |acc, b| (((acc as u128) << 8 | *b as u128) % m as u128) as u64)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({}b:{})", self.len, hex::encode(&self.bytes))
    }
}

/// How messages are mapped into `G1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashMode {
    /// Integer value of the message mod `p`, as an exponent of the
    /// generator. Transparent backend only. Insecure: the discrete log of
    /// every hash is public, so `σ = v^{H(M)}` is computable by anyone. Meant
    /// for worked examples only.
    TestVector,
    /// Keyed SHA-256 to an exponent. Transparent backend; used by the attack
    /// games, whose adversary interfaces never see the key.
    Oracle { key: u64 },
    /// SHA-256 of the message and a one-byte counter to an x-coordinate,
    /// lifted to the curve and multiplied by the cofactor. Curve backend.
    TryAndIncrement,
}

impl HashMode {
    pub fn name(&self) -> &'static str {
        match self {
            HashMode::TestVector => "test-vector",
            HashMode::Oracle { .. } => "oracle",
            HashMode::TryAndIncrement => "try-and-increment",
        }
    }

    /// Default mode for a backend.
    pub fn default_for(kind: BackendKind) -> Self {
        match kind {
            BackendKind::Transparent => HashMode::Oracle { key: 0x5eed },
            BackendKind::TateCurve => HashMode::TryAndIncrement,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            HashMode::Oracle { key } => format!("oracle:{key:016x}"),
            other => other.name().to_string(),
        }
    }

    pub fn from_text(text: &str) -> Option<Self> {
        match text {
            "test-vector" => Some(HashMode::TestVector),
            "try-and-increment" => Some(HashMode::TryAndIncrement),
            _ => {
                let key = text.strip_prefix("oracle:")?;
                u64::from_str_radix(key, 16).ok().map(|key| HashMode::Oracle { key })
            }
        }
    }
}

/// `H(M)` for the suite's backend.
pub fn hash_to_group<B: Backend>(msg: &BitString, mode: &HashMode, suite: &GroupSuite<B>) -> Result<B::G1, HashError> {
    suite.backend().hash_to_g1(msg, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn integer_packing() {
        let m = BitString::from_integer(7, 4);
        assert_eq!(m.as_bytes(), &[7]);
        assert_eq!(m.to_integer_mod(11), 7);
        let m = BitString::from_integer(0x3ff, 10);
        assert_eq!(m.as_bytes(), &[0x03, 0xff]);
        assert_eq!(m.to_integer_mod(1009), 1023 % 1009);
    }

    #[test]
    fn random_respects_length() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for len in 1..20 {
            let m = BitString::random(len, &mut rng);
            assert!(BitString::from_packed(m.as_bytes(), len).is_some());
            assert!(m.to_integer_mod(u64::MAX) < (1u64 << len));
        }
        assert!(BitString::from_packed(&[0x10], 4).is_none());
    }

    #[test]
    fn mode_text_round_trip() {
        for mode in [HashMode::TestVector, HashMode::TryAndIncrement, HashMode::Oracle { key: 77 }] {
            assert_eq!(HashMode::from_text(&mode.to_text()), Some(mode));
        }
        assert_eq!(HashMode::from_text("sha1"), None);
    }

    #[test]
    fn binary_text() {
        let m = BitString::from_binary("1011").unwrap();
        assert_eq!(m, BitString::from_integer(11, 4));
        assert_eq!(m.to_binary(), "1011");
        let long = BitString::from_binary("100000000").unwrap();
        assert_eq!(long, BitString::from_integer(256, 9));
        assert_eq!(long.to_binary(), "100000000");
        assert!(BitString::from_binary("10a").is_none());
        assert!(BitString::from_binary("").is_none());
    }
}
