use crate::algebra::{scalar_width, AlgebraError, Backend, Bandwidth, Scalar};
use crate::sig::hash::BitString;

use super::{Component, Kind, Message};

/// Fixed-width byte encoding of protocol messages.
///
/// Components are concatenated without separators; the decoder is driven by
/// the expected shape, so every component has a length known up front. Bit
/// strings need the scheme's challenge length `n`.
#[derive(Debug, Clone, Copy)]
pub struct MessageCodec<'a, B: Backend> {
    backend: &'a B,
    bits: usize,
}

impl<'a, B: Backend> MessageCodec<'a, B> {
    pub fn new(backend: &'a B, bits: usize) -> Self {
        Self { backend, bits }
    }

    pub fn len_of(&self, kind: Kind) -> usize {
        match kind {
            Kind::G1 => self.backend.g1_len(),
            Kind::G2 => self.backend.g2_len(),
            Kind::Scalar => scalar_width(self.backend.order()),
            Kind::Bits => self.bits.div_ceil(8),
        }
    }

    pub fn shape_len(&self, shape: &[Kind]) -> usize {
        shape.iter().map(|k| self.len_of(*k)).sum()
    }

    pub fn encode_scalar(&self, s: &Scalar, out: &mut Vec<u8>) {
        let width = scalar_width(self.backend.order());
        out.extend_from_slice(&s.value().to_be_bytes()[8 - width..]);
    }

    pub fn decode_scalar(&self, bytes: &[u8]) -> Result<Scalar, AlgebraError> {
        let p = self.backend.order();
        if bytes.len() != scalar_width(p) {
            return Err(AlgebraError::MalformedEncoding("scalar length"));
        }
        let v = bytes.iter().fold(0u64, |acc, b| (acc << 8) | *b as u64);
        if v >= p {
            return Err(AlgebraError::MalformedEncoding("scalar out of range"));
        }
        Ok(Scalar::new(v, p))
    }

    pub fn encode_component(&self, c: &Component<B>, out: &mut Vec<u8>) {
        match c {
            Component::G1(a) => self.backend.encode_g1(a, out),
            Component::G2(a) => self.backend.encode_g2(a, out),
            Component::Scalar(s) => self.encode_scalar(s, out),
            Component::Bits(m) => out.extend_from_slice(m.as_bytes()),
        }
    }

    pub fn encode(&self, msg: &[Component<B>]) -> Vec<u8> {
        let mut out = Vec::new();
        for c in msg {
            self.encode_component(c, &mut out);
        }
        out
    }

    pub fn decode(&self, shape: &[Kind], bytes: &[u8]) -> Result<Message<B>, AlgebraError> {
        if bytes.len() != self.shape_len(shape) {
            return Err(AlgebraError::MalformedEncoding("message length"));
        }
        let mut rest = bytes;
        let mut out = Vec::with_capacity(shape.len());
        for kind in shape {
            let (head, tail) = rest.split_at(self.len_of(*kind));
            rest = tail;
            out.push(match kind {
                Kind::G1 => Component::G1(self.backend.decode_g1(head)?),
                Kind::G2 => Component::G2(self.backend.decode_g2(head)?),
                Kind::Scalar => Component::Scalar(self.decode_scalar(head)?),
                Kind::Bits => Component::Bits(
                    BitString::from_packed(head, self.bits).ok_or(AlgebraError::MalformedEncoding("bit string"))?,
                ),
            });
        }
        Ok(out)
    }

    /// Element counts and encoded size of `msg`.
    pub fn bandwidth(&self, msg: &[Component<B>]) -> Bandwidth {
        let mut bw = Bandwidth::default();
        for c in msg {
            match c {
                Component::G1(_) => bw.g1 += 1,
                Component::G2(_) => bw.g2 += 1,
                Component::Scalar(_) => bw.zp += 1,
                Component::Bits(_) => bw.bits += 1,
            }
            bw.bytes += self.len_of(c.kind()) as u64;
        }
        bw
    }
}
