//! The exponent backend: `G1` and `G2` elements are stored as their discrete
//! logarithms relative to fixed implicit generators, and the pairing is
//! multiplication of exponents. Every identity is checkable by hand, and
//! discrete logs are free, which is what scripted adversaries rely on.

use sha2::{Digest, Sha256};

use super::{
    decode_be, encode_be, is_prime, scalar_width, AlgebraError, Backend, BackendKind, DiscreteLog, MAX_MODULUS,
};
use crate::record::{Record, RecordError};
use crate::sig::hash::{BitString, HashError, HashMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transparent {
    p: u64,
}

/// `g^e` for the implicit generator `g` of `G1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransparentG1(u64);

/// `e(g, g)^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransparentG2(u64);

impl TransparentG1 {
    pub fn exponent(&self) -> u64 {
        self.0
    }
}

impl TransparentG2 {
    pub fn exponent(&self) -> u64 {
        self.0
    }
}

impl Transparent {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p < 5 {
            return Err(AlgebraError::ModulusTooSmall(p));
        }
        if p > MAX_MODULUS {
            return Err(AlgebraError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// The element with discrete log `e` (reduced mod `p`).
    pub fn g1(&self, e: u64) -> TransparentG1 {
        TransparentG1(e % self.p)
    }

    pub fn g2(&self, e: u64) -> TransparentG2 {
        TransparentG2(e % self.p)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn decode(&self, bytes: &[u8]) -> Result<u64, AlgebraError> {
        if bytes.len() != scalar_width(self.p) {
            return Err(AlgebraError::MalformedEncoding("wrong length"));
        }
        let v = decode_be(bytes);
        if v >= self.p {
            return Err(AlgebraError::MalformedEncoding("exponent out of range"));
        }
        Ok(v)
    }
}

impl DiscreteLog for Transparent {
    fn dlog_g1(&self, a: &TransparentG1) -> Option<u64> {
        Some(a.0)
    }

    fn dlog_g2(&self, x: &TransparentG2) -> Option<u64> {
        Some(x.0)
    }
}

impl Backend for Transparent {
    type G1 = TransparentG1;
    type G2 = TransparentG2;

    fn kind(&self) -> BackendKind {
        BackendKind::Transparent
    }

    fn order(&self) -> u64 {
        self.p
    }

    fn generator(&self) -> TransparentG1 {
        TransparentG1(1)
    }

    fn g1_identity(&self) -> TransparentG1 {
        TransparentG1(0)
    }

    fn g1_op(&self, a: &TransparentG1, b: &TransparentG1) -> TransparentG1 {
        TransparentG1((a.0 + b.0) % self.p)
    }

    fn g1_inv(&self, a: &TransparentG1) -> TransparentG1 {
        TransparentG1((self.p - a.0) % self.p)
    }

    fn g1_pow(&self, a: &TransparentG1, k: u64) -> TransparentG1 {
        TransparentG1(self.mul(a.0, k % self.p))
    }

    fn g2_identity(&self) -> TransparentG2 {
        TransparentG2(0)
    }

    fn g2_op(&self, a: &TransparentG2, b: &TransparentG2) -> TransparentG2 {
        TransparentG2((a.0 + b.0) % self.p)
    }

    fn g2_inv(&self, a: &TransparentG2) -> TransparentG2 {
        TransparentG2((self.p - a.0) % self.p)
    }

    fn g2_pow(&self, a: &TransparentG2, k: u64) -> TransparentG2 {
        TransparentG2(self.mul(a.0, k % self.p))
    }

    fn pair(&self, a: &TransparentG1, b: &TransparentG1) -> TransparentG2 {
        TransparentG2(self.mul(a.0, b.0))
    }

    fn g1_len(&self) -> usize {
        scalar_width(self.p)
    }

    fn g2_len(&self) -> usize {
        scalar_width(self.p)
    }

    fn encode_g1(&self, a: &TransparentG1, out: &mut Vec<u8>) {
        encode_be(a.0, scalar_width(self.p), out);
    }

    fn decode_g1(&self, bytes: &[u8]) -> Result<TransparentG1, AlgebraError> {
        self.decode(bytes).map(TransparentG1)
    }

    fn encode_g2(&self, a: &TransparentG2, out: &mut Vec<u8>) {
        encode_be(a.0, scalar_width(self.p), out);
    }

    fn decode_g2(&self, bytes: &[u8]) -> Result<TransparentG2, AlgebraError> {
        self.decode(bytes).map(TransparentG2)
    }

    fn hash_to_g1(&self, msg: &BitString, mode: &HashMode) -> Result<TransparentG1, HashError> {
        match mode {
            HashMode::TestVector => Ok(TransparentG1(msg.to_integer_mod(self.p))),
            HashMode::Oracle { key } => {
                let mut h = Sha256::new();
                h.update(b"pairid/oracle-hash");
                h.update(key.to_be_bytes());
                h.update((msg.len() as u64).to_be_bytes());
                h.update(msg.as_bytes());
                let digest = h.finalize();
                let mut wide = [0u8; 16];
                wide.copy_from_slice(&digest[..16]);
                Ok(TransparentG1((u128::from_be_bytes(wide) % self.p as u128) as u64))
            }
            HashMode::TryAndIncrement => {
                Err(HashError::ModeBackendMismatch { mode: mode.name(), backend: BackendKind::Transparent })
            }
        }
    }

    fn describe(&self) -> Record {
        let mut r = Record::new();
        r.push("backend", self.kind().name());
        r.push("p", self.p.to_string());
        let mut g = Vec::new();
        self.encode_g1(&self.generator(), &mut g);
        r.push("generator", hex::encode(g));
        r
    }

    fn from_record(record: &Record) -> Result<Self, RecordError> {
        record.expect_value("backend", BackendKind::Transparent.name())?;
        let p = record.parse_u64("p")?;
        Transparent::new(p).map_err(RecordError::Algebra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(Transparent::new(4), Err(AlgebraError::ModulusTooSmall(4)));
        assert_eq!(Transparent::new(15), Err(AlgebraError::NotPrime(15)));
        assert!(Transparent::new(5).is_ok());
    }

    #[test]
    fn encoding_example() {
        let t = Transparent::new(11).unwrap();
        let mut out = Vec::new();
        t.encode_g1(&t.g1(7), &mut out);
        assert_eq!(out, vec![0x00, 0x07]);
        assert_eq!(t.decode_g1(&out).unwrap(), t.g1(7));
        assert_eq!(t.decode_g1(&out[..1]), Err(AlgebraError::MalformedEncoding("wrong length")));
        assert!(t.decode_g1(&[0x00, 0x0b]).is_err());
    }

    #[test]
    fn encoding_round_trip_exhaustive() {
        for p in [5u64, 11, 101, 1009] {
            let t = Transparent::new(p).unwrap();
            for e in 0..p {
                let mut a = Vec::new();
                t.encode_g1(&t.g1(e), &mut a);
                assert_eq!(a.len(), t.g1_len());
                assert_eq!(t.decode_g1(&a).unwrap(), t.g1(e));
                let mut b = Vec::new();
                t.encode_g2(&t.g2(e), &mut b);
                assert_eq!(t.decode_g2(&b).unwrap(), t.g2(e));
            }
        }
    }

    #[test]
    fn test_vector_hash() {
        let t = Transparent::new(11).unwrap();
        let m = BitString::from_integer(7, 4);
        assert_eq!(t.hash_to_g1(&m, &HashMode::TestVector).unwrap(), t.g1(7));
        assert!(t.hash_to_g1(&m, &HashMode::TryAndIncrement).is_err());
        let k = HashMode::Oracle { key: 9 };
        assert_eq!(t.hash_to_g1(&m, &k).unwrap(), t.hash_to_g1(&m, &k).unwrap());
    }

    #[test]
    fn description_round_trip() {
        let t = Transparent::new(1009).unwrap();
        let text = t.describe().to_string();
        let back = Transparent::from_record(&Record::parse(&text).unwrap()).unwrap();
        assert_eq!(back, t);
    }
}
