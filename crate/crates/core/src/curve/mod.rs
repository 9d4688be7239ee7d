//! A real pairing backend: the supersingular curve `y^2 = x^3 + x` over
//! `F_q` with `q ≡ 3 (mod 4)`, its order-`p` subgroup as `G1`, and the
//! order-`p` subgroup of `F_{q^2}^*` as `G2`.

mod fq2;
mod pairing;
mod point;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{decode_be, encode_be, factorize, is_prime, AlgebraError, Backend, BackendKind, DiscreteLog, Fp};
use crate::record::{Record, RecordError};
use crate::sig::hash::{BitString, HashError, HashMode};

pub use fq2::Fq2;
pub use pairing::{final_exponentiation, miller_loop, tate_pairing};
pub use point::{Curve, CurvePoint, Fq2Point};

/// Largest field prime the validator will enumerate.
pub const MAX_DESK_Q: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("Miller evaluation vanished for every offset tried")]
    DegeneratePairing,
    #[error("curve validation failed: {0}")]
    ValidationFailed(String),
}

impl From<CurveError> for AlgebraError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::NotOnCurve => AlgebraError::NotOnCurve,
            _ => AlgebraError::MalformedEncoding("curve error"),
        }
    }
}

/// Validated parameters for `y^2 = x^3 + x` over `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveParams {
    /// Field prime, `≡ 3 (mod 4)`.
    pub q: u64,
    /// Prime subgroup order, `p | q + 1`, `p^2 ∤ q + 1`.
    pub p: u64,
    /// Cofactor `(q + 1) / p`.
    pub h: u64,
    /// Generator of the order-`p` subgroup.
    pub generator: CurvePoint,
}

/// Outcome of [`enumerate_and_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveReport {
    pub params: CurveParams,
    /// `#E(F_q)` counted point by point.
    pub point_count: u64,
    pub embedding_degree: u32,
}

fn fail(msg: impl Into<String>) -> CurveError {
    CurveError::ValidationFailed(msg.into())
}

/// Enumerates `E(F_q)`, checks the supersingular count `q + 1`, picks the
/// subgroup order (the given `p`, or the largest prime factor of `q + 1`)
/// and derives a generator by clearing the cofactor of the first lifted
/// point that survives.
pub fn enumerate_and_validate(q: u64, p: Option<u64>) -> Result<CurveReport, CurveError> {
    if q > MAX_DESK_Q {
        return Err(fail(format!("q = {q} exceeds desk scale ({MAX_DESK_Q})")));
    }
    if !is_prime(q) {
        return Err(fail(format!("q = {q} is not prime")));
    }
    if q % 4 != 3 {
        return Err(fail(format!("q = {q} is not 3 mod 4; y^2 = x^3 + x is not supersingular")));
    }
    let curve = Curve::new(q);
    let points = curve.enumerate();
    let n = points.len() as u64;
    if n != q + 1 {
        return Err(fail(format!("#E = {n}, expected q + 1 = {}", q + 1)));
    }
    let p = match p {
        Some(p) => p,
        None => *factorize(n).last().expect("n >= 4"),
    };
    if !is_prime(p) {
        return Err(fail(format!("p = {p} is not prime")));
    }
    if !n.is_multiple_of(p) {
        return Err(fail(format!("p = {p} does not divide #E = {n}")));
    }
    if p < 5 {
        return Err(fail(format!("subgroup order {p} is too small (need p >= 5)")));
    }
    if (n / p).is_multiple_of(p) {
        return Err(fail(format!("p^2 divides #E = {n}")));
    }
    if (q - 1).is_multiple_of(p) {
        return Err(fail("embedding degree is 1, not 2"));
    }
    let h = n / p;
    let generator = points
        .iter()
        .map(|r| curve.mul(r, h))
        .find(|g| !g.is_infinity())
        .ok_or_else(|| fail("cofactor clearing produced only the identity"))?;
    if !curve.mul(&generator, p).is_infinity() {
        return Err(fail("generator order does not divide p"));
    }
    Ok(CurveReport { params: CurveParams { q, p, h, generator }, point_count: n, embedding_degree: 2 })
}

impl CurveParams {
    fn shipped(q: u64, p: u64) -> Self {
        enumerate_and_validate(q, Some(p)).expect("shipped parameters validate").params
    }

    /// `q = 59`, `#E = 60`, `p = 5`, `h = 12`.
    pub fn q59() -> Self {
        Self::shipped(59, 5)
    }

    /// `q = 83`, `#E = 84`, `p = 7`, `h = 12`.
    pub fn q83() -> Self {
        Self::shipped(83, 7)
    }

    /// `q = 523`, `#E = 524`, `p = 131`, `h = 4`.
    pub fn q523() -> Self {
        Self::shipped(523, 131)
    }

    /// A shipped parameter set with subgroup order `p`, if there is one.
    pub fn for_subgroup(p: u64) -> Option<Self> {
        match p {
            5 => Some(Self::q59()),
            7 => Some(Self::q83()),
            131 => Some(Self::q523()),
            _ => None,
        }
    }

    pub fn curve(&self) -> Curve {
        Curve::new(self.q)
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.push("backend", BackendKind::TateCurve.name());
        r.push("q", self.q.to_string());
        r.push("p", self.p.to_string());
        r.push("h", self.h.to_string());
        if let Some((x, y)) = self.generator.coords() {
            r.push("gx", x.value().to_string());
            r.push("gy", y.value().to_string());
        }
        r
    }

    pub fn from_record(record: &Record) -> Result<Self, RecordError> {
        let q = record.parse_u64("q")?;
        let p = record.parse_u64("p")?;
        let report = enumerate_and_validate(q, Some(p)).map_err(|e| RecordError::invalid("q", e))?;
        let mut params = report.params;
        if record.parse_u64("h")? != params.h {
            return Err(RecordError::invalid("h", "cofactor does not match q + 1 = h·p"));
        }
        let curve = params.curve();
        let g =
            curve.point(record.parse_u64("gx")?, record.parse_u64("gy")?).map_err(|e| RecordError::invalid("gx", e))?;
        if g.is_infinity() || !curve.mul(&g, p).is_infinity() {
            return Err(RecordError::invalid("gx", "generator is not of order p"));
        }
        params.generator = g;
        Ok(params)
    }
}

/// `G1` = order-`p` points of `E(F_q)`, `G2` = order-`p` elements of
/// `F_{q^2}^*`, pairing = reduced Tate pairing with distortion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateBackend {
    params: CurveParams,
    curve: Curve,
}

impl TateBackend {
    pub fn new(params: CurveParams) -> Self {
        Self { curve: params.curve(), params }
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Bytes for one `F_q` coordinate.
    fn coord_width(&self) -> usize {
        let bits = 64 - self.params.q.leading_zeros() as usize;
        bits.div_ceil(8).max(2)
    }

    /// Bytes for a compressed point: `x` plus an infinity flag and a sign bit
    /// packed into the top two bits.
    fn point_width(&self) -> usize {
        let bits = 64 - self.params.q.leading_zeros() as usize;
        (bits + 2).div_ceil(8).max(2)
    }

    /// Brute-force discrete log of `a` to the base of the generator.
    pub fn dlog_g1(&self, a: &CurvePoint) -> Option<u64> {
        let g = self.params.generator;
        let mut acc = CurvePoint::Infinity;
        for k in 0..self.params.p {
            if acc == *a {
                return Some(k);
            }
            acc = self.curve.add(&acc, &g);
        }
        None
    }

    /// Brute-force discrete log of `x` to the base `e(g, g)`.
    pub fn dlog_g2(&self, x: &Fq2) -> Option<u64> {
        let z = self.pair(&self.params.generator, &self.params.generator);
        let mut acc = Fq2::one(self.params.q);
        for k in 0..self.params.p {
            if acc == *x {
                return Some(k);
            }
            acc = acc * z;
        }
        None
    }

    fn lift(&self, x: Fp, odd: bool) -> Option<CurvePoint> {
        let y = self.curve.rhs(x).sqrt()?;
        let y = if (y.value() & 1 == 1) == odd { y } else { -y };
        Some(CurvePoint::Affine { x, y })
    }
}

impl DiscreteLog for TateBackend {
    fn dlog_g1(&self, a: &CurvePoint) -> Option<u64> {
        TateBackend::dlog_g1(self, a)
    }

    fn dlog_g2(&self, x: &Fq2) -> Option<u64> {
        TateBackend::dlog_g2(self, x)
    }
}

impl Backend for TateBackend {
    type G1 = CurvePoint;
    type G2 = Fq2;

    fn kind(&self) -> BackendKind {
        BackendKind::TateCurve
    }

    fn order(&self) -> u64 {
        self.params.p
    }

    fn base_field(&self) -> Option<u64> {
        Some(self.params.q)
    }

    fn generator(&self) -> CurvePoint {
        self.params.generator
    }

    fn g1_identity(&self) -> CurvePoint {
        CurvePoint::Infinity
    }

    fn g1_op(&self, a: &CurvePoint, b: &CurvePoint) -> CurvePoint {
        self.curve.add(a, b)
    }

    fn g1_inv(&self, a: &CurvePoint) -> CurvePoint {
        self.curve.neg(a)
    }

    fn g1_pow(&self, a: &CurvePoint, k: u64) -> CurvePoint {
        self.curve.mul(a, k % self.params.p)
    }

    fn g2_identity(&self) -> Fq2 {
        Fq2::one(self.params.q)
    }

    fn g2_op(&self, a: &Fq2, b: &Fq2) -> Fq2 {
        *a * *b
    }

    fn g2_inv(&self, a: &Fq2) -> Fq2 {
        // unitary elements: the inverse is the conjugate
        a.conj()
    }

    fn g2_pow(&self, a: &Fq2, k: u64) -> Fq2 {
        a.pow(k % self.params.p)
    }

    fn pair(&self, a: &CurvePoint, b: &CurvePoint) -> Fq2 {
        tate_pairing(&self.curve, self.params.p, a, b).expect("Miller values at distortion images never vanish")
    }

    fn g1_len(&self) -> usize {
        self.point_width()
    }

    fn g2_len(&self) -> usize {
        2 * self.coord_width()
    }

    fn encode_g1(&self, a: &CurvePoint, out: &mut Vec<u8>) {
        let w = self.point_width();
        let top = 8 * w - 1;
        let v = match a.coords() {
            None => 1u64 << top,
            Some((x, y)) => x.value() | ((y.value() & 1) << (top - 1)),
        };
        encode_be(v, w, out);
    }

    fn decode_g1(&self, bytes: &[u8]) -> Result<CurvePoint, AlgebraError> {
        let w = self.point_width();
        if bytes.len() != w {
            return Err(AlgebraError::MalformedEncoding("wrong length"));
        }
        let top = 8 * w - 1;
        let raw = decode_be(bytes);
        let infinity = raw >> top & 1 == 1;
        let odd = raw >> (top - 1) & 1 == 1;
        let xv = raw & ((1u64 << (top - 1)) - 1);
        if infinity {
            if raw != 1u64 << top {
                return Err(AlgebraError::MalformedEncoding("infinity with payload"));
            }
            return Ok(CurvePoint::Infinity);
        }
        if xv >= self.params.q {
            return Err(AlgebraError::MalformedEncoding("x-coordinate out of range"));
        }
        let x = Fp::new(xv, self.params.q);
        let point = self.lift(x, odd).ok_or(AlgebraError::NotOnCurve)?;
        if let Some((_, y)) = point.coords() {
            if (y.value() & 1 == 1) != odd {
                return Err(AlgebraError::MalformedEncoding("sign bit set on y = 0"));
            }
        }
        if !self.curve.mul(&point, self.params.p).is_infinity() {
            return Err(AlgebraError::NotInSubgroup);
        }
        Ok(point)
    }

    fn encode_g2(&self, a: &Fq2, out: &mut Vec<u8>) {
        let w = self.coord_width();
        encode_be(a.c0.value(), w, out);
        encode_be(a.c1.value(), w, out);
    }

    fn decode_g2(&self, bytes: &[u8]) -> Result<Fq2, AlgebraError> {
        let w = self.coord_width();
        if bytes.len() != 2 * w {
            return Err(AlgebraError::MalformedEncoding("wrong length"));
        }
        let (c0, c1) = (decode_be(&bytes[..w]), decode_be(&bytes[w..]));
        if c0 >= self.params.q || c1 >= self.params.q {
            return Err(AlgebraError::MalformedEncoding("coordinate out of range"));
        }
        let x = Fq2::new(Fp::new(c0, self.params.q), Fp::new(c1, self.params.q));
        if x.pow(self.params.p) != Fq2::one(self.params.q) {
            return Err(AlgebraError::NotInSubgroup);
        }
        Ok(x)
    }

    fn hash_to_g1(&self, msg: &BitString, mode: &HashMode) -> Result<CurvePoint, HashError> {
        if *mode != HashMode::TryAndIncrement {
            return Err(HashError::ModeBackendMismatch { mode: mode.name(), backend: BackendKind::TateCurve });
        }
        for counter in 0..=255u8 {
            let mut h = Sha256::new();
            h.update(b"pairid/try-and-increment");
            h.update((msg.len() as u64).to_be_bytes());
            h.update(msg.as_bytes());
            h.update([counter]);
            let digest = h.finalize();
            let mut wide = [0u8; 16];
            wide.copy_from_slice(&digest[..16]);
            let x = Fp::new((u128::from_be_bytes(wide) % self.params.q as u128) as u64, self.params.q);
            let Some(point) = self.lift(x, digest[16] & 1 == 1) else {
                continue;
            };
            let cleared = self.curve.mul(&point, self.params.h);
            if !cleared.is_infinity() {
                return Ok(cleared);
            }
        }
        Err(HashError::Exhausted)
    }

    fn describe(&self) -> Record {
        self.params.to_record()
    }

    fn from_record(record: &Record) -> Result<Self, RecordError> {
        record.expect_value("backend", BackendKind::TateCurve.name())?;
        Ok(TateBackend::new(CurveParams::from_record(record)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let r = enumerate_and_validate(59, None).unwrap();
        assert_eq!(r.point_count, 60);
        assert_eq!((r.params.p, r.params.h), (5, 12));
        assert!(enumerate_and_validate(3, None).is_err());
        assert!(matches!(enumerate_and_validate(13, None), Err(CurveError::ValidationFailed(_))));
        let r = enumerate_and_validate(523, None).unwrap();
        assert_eq!((r.params.p, r.params.h), (131, 4));
        assert!(enumerate_and_validate(59, Some(7)).is_err());
        assert!(enumerate_and_validate(59, Some(2)).is_err());
    }

    #[test]
    fn point_encoding_round_trip_and_sign_flip() {
        let b = TateBackend::new(CurveParams::q523());
        let g = b.generator();
        for k in 0..b.order() {
            let pt = b.g1_pow(&g, k);
            let mut enc = Vec::new();
            b.encode_g1(&pt, &mut enc);
            assert_eq!(enc.len(), b.g1_len());
            assert_eq!(b.decode_g1(&enc).unwrap(), pt);
            if !pt.is_infinity() {
                let top = 8 * enc.len() - 1;
                let flipped = decode_be(&enc) ^ (1u64 << (top - 1));
                let mut bytes = Vec::new();
                encode_be(flipped, enc.len(), &mut bytes);
                assert_eq!(b.decode_g1(&bytes).unwrap(), b.g1_inv(&pt));
            }
        }
        assert_eq!(b.decode_g1(&[0x00]), Err(AlgebraError::MalformedEncoding("wrong length")));
    }

    #[test]
    fn decode_rejects_points_outside_subgroup() {
        let b = TateBackend::new(CurveParams::q59());
        let c = b.curve();
        let outsider = c.enumerate().into_iter().find(|pt| !pt.is_infinity() && !c.mul(pt, 5).is_infinity()).unwrap();
        let mut enc = Vec::new();
        b.encode_g1(&outsider, &mut enc);
        assert_eq!(b.decode_g1(&enc), Err(AlgebraError::NotInSubgroup));
    }

    #[test]
    fn g2_encoding_round_trip() {
        let b = TateBackend::new(CurveParams::q83());
        let z = b.pair(&b.generator(), &b.generator());
        for k in 0..7 {
            let x = b.g2_pow(&z, k);
            let mut enc = Vec::new();
            b.encode_g2(&x, &mut enc);
            assert_eq!(b.decode_g2(&enc).unwrap(), x);
        }
    }

    #[test]
    fn try_and_increment_lands_in_subgroup() {
        let b = TateBackend::new(CurveParams::q59());
        for v in 0..64u64 {
            let m = BitString::from_integer(v, 8);
            let h = b.hash_to_g1(&m, &HashMode::TryAndIncrement).unwrap();
            assert!(b.curve().mul(&h, 5).is_infinity());
            assert_eq!(h, b.hash_to_g1(&m, &HashMode::TryAndIncrement).unwrap());
        }
        let m = BitString::from_integer(1, 8);
        assert!(b.hash_to_g1(&m, &HashMode::TestVector).is_err());
    }

    #[test]
    fn params_record_round_trip() {
        let params = CurveParams::q83();
        let back = CurveParams::from_record(&Record::parse(&params.to_record().to_string()).unwrap()).unwrap();
        assert_eq!(back, params);
    }

    #[test]
    fn dlogs() {
        let b = TateBackend::new(CurveParams::q59());
        let g = b.generator();
        let z = b.pair(&g, &g);
        for k in 0..5 {
            assert_eq!(b.dlog_g1(&b.g1_pow(&g, k)), Some(k));
            assert_eq!(b.dlog_g2(&b.g2_pow(&z, k)), Some(k));
        }
    }
}
