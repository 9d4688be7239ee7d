//! The curve and transparent backends decide identically once curve
//! elements are identified with their discrete logarithms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, GroupSuite, Transparent};
use crate::curve::TateBackend;
use crate::id::{
    blsid, cdhid, hls, owfid, scl, sdhid, verify_messages, Component, Decision, Kind, Message, PublicKey, SchemeId,
    SchemeParams,
};
use crate::sig::hash::{hash_to_group, BitString};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgreementReport {
    pub scheme: SchemeId,
    pub p: u64,
    pub cases: u64,
    pub accepts: u64,
    pub mismatches: u64,
}

fn lift1<B: Backend>(s: &GroupSuite<B>, e: u64) -> B::G1 {
    s.g1_pow_raw(&s.generator(), &s.scalar(e))
}

fn lift2<B: Backend>(s: &GroupSuite<B>, e: u64) -> B::G2 {
    s.g2_pow_raw(&s.gt_generator(), &s.scalar(e))
}

/// Public key from secret exponents; BLSID is modelled by CDHID here and
/// handled separately on the curve side.
fn public_key<B: Backend>(s: &GroupSuite<B>, scheme: SchemeId, k: &[u64]) -> PublicKey<B> {
    let sc = |e: u64| s.scalar(e);
    match scheme {
        SchemeId::Blsid | SchemeId::Cdhid => cdhid::key_from_secret(s, sc(k[0])).public,
        SchemeId::Sdhid => sdhid::key_from_secret(s, sc(k[0]), sc(k[1])).public,
        SchemeId::Owfid => owfid::key_from_parts(s, lift1(s, k[0]), lift2(s, k[1]), lift1(s, k[2]), sc(k[3])).public,
        SchemeId::Scl => scl::key_from_parts(s, lift1(s, k[0]), sc(k[1])).public,
        SchemeId::Hls => hls::key_from_parts(s, lift1(s, k[0]), sc(k[1]), sc(k[2])).public,
    }
}

fn message<B: Backend>(s: &GroupSuite<B>, shape: &[Kind], exps: &[u64]) -> Message<B> {
    shape
        .iter()
        .zip(exps)
        .map(|(k, &e)| match k {
            Kind::G1 => Component::G1(lift1(s, e)),
            Kind::G2 => Component::G2(lift2(s, e)),
            Kind::Scalar => Component::Scalar(s.scalar(e)),
            Kind::Bits => unreachable!("bit strings are swept separately"),
        })
        .collect()
}

fn decide<B: Backend>(
    s: &GroupSuite<B>,
    pk: &PublicKey<B>,
    c: &[Component<B>],
    ch: &[Component<B>],
    r: &[Component<B>],
) -> Decision {
    verify_messages(s, pk, c, ch, r).expect("well-formed messages")
}

/// Every tuple in `0..p` of the given length.
fn tuples(p: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..p).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

/// Sweeps every commitment, challenge and response for `keys` random keys
/// and compares decisions across backends.
pub fn agreement_sweep(scheme: SchemeId, curve: &GroupSuite<TateBackend>, keys: usize, seed: u64) -> AgreementReport {
    let p = curve.order();
    let flat = GroupSuite::new(Transparent::new(p).expect("curve subgroup order is prime"));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let key_len = match scheme {
        SchemeId::Blsid | SchemeId::Cdhid => 1,
        SchemeId::Sdhid | SchemeId::Scl => 2,
        SchemeId::Hls => 3,
        SchemeId::Owfid => 4,
    };
    let commitments = if scheme.has_commitment() { tuples(p, 1) } else { vec![Vec::new()] };
    let responses = tuples(p, scheme.response_shape().len());
    let params = SchemeParams::default_for(p, curve.kind());
    let mut report = AgreementReport { scheme, p, cases: 0, accepts: 0, mismatches: 0 };

    for _ in 0..keys {
        let k: Vec<u64> = (0..key_len).map(|_| rng.gen_range(1..p)).collect();
        let flat_pk = public_key(&flat, scheme, &k);
        let curve_pk = match scheme {
            SchemeId::Blsid => blsid::key_from_secret(curve, params, curve.scalar(k[0])).public,
            _ => public_key(curve, scheme, &k),
        };
        // (curve challenge, transparent challenge) pairs.
        let challenges: Vec<(Message<TateBackend>, Message<Transparent>)> = match scheme {
            SchemeId::Blsid => (0..1u64 << params.challenge_bits)
                .map(|v| {
                    let m = BitString::from_integer(v, params.challenge_bits);
                    let h = hash_to_group(&m, &params.hash, curve).expect("hash into the subgroup");
                    let e = curve.backend().dlog_g1(&h).expect("subgroup element");
                    (vec![Component::Bits(m)], vec![Component::G1(lift1(&flat, e))])
                })
                .collect(),
            SchemeId::Cdhid => {
                (0..p).map(|e| (vec![Component::G1(lift1(curve, e))], vec![Component::G1(lift1(&flat, e))])).collect()
            }
            _ => (1..p)
                .map(|e| (vec![Component::Scalar(curve.scalar(e))], vec![Component::Scalar(flat.scalar(e))]))
                .collect(),
        };
        for c in &commitments {
            let (cc, fc) = (message(curve, scheme.commitment_shape(), c), message(&flat, scheme.commitment_shape(), c));
            for (cch, fch) in &challenges {
                for r in &responses {
                    let dc = decide(curve, &curve_pk, &cc, cch, &message(curve, scheme.response_shape(), r));
                    let df = decide(&flat, &flat_pk, &fc, fch, &message(&flat, scheme.response_shape(), r));
                    report.cases += 1;
                    report.accepts += dc.is_accept() as u64;
                    report.mismatches += (dc != df) as u64;
                }
            }
        }
    }
    report
}
