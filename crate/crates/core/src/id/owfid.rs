//! Witness-indistinguishable identification from a one-way function.
//!
//! Public key `(P, y, v)` with `v = e(P, Q)^{-1} · y^{-s}`; the secret is any
//! `(Q, s)` satisfying that equation, and each public key has `p` of them.
//! The prover commits to `x = e(P, R) · y^r`, receives `m`, and answers
//! `T = R · Q^m`, `a = r + m·s`. The verifier checks
//! `e(P, T) · y^a · v^m = x`.

use std::collections::HashMap;

use rand::Rng;

use crate::algebra::{Backend, GroupSuite, Scalar};

use super::{Decision, PublicKey, SchemeError, SchemeKeyPair, SecretKey};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwfidPublic<B: Backend> {
    pub p: B::G1,
    pub y: B::G2,
    pub v: B::G2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwfidSecret<B: Backend> {
    pub q: B::G1,
    pub s: Scalar,
}

/// Prover coins for one session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwfidWitness<B: Backend> {
    pub r_point: B::G1,
    pub r: Scalar,
}

pub fn keygen<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> SchemeKeyPair<B> {
    let p = suite.random_g1_generator(rng);
    let q = suite.random_g1(rng);
    let y = suite.random_g2_generator(rng);
    let s = suite.random_nonzero_scalar(rng);
    key_from_parts(suite, p, y, q, s)
}

pub fn public_value<B: Backend>(suite: &GroupSuite<B>, p: &B::G1, y: &B::G2, q: &B::G1, s: &Scalar) -> B::G2 {
    let epq = suite.pair_raw(p, q);
    let ys = suite.g2_pow_raw(y, s);
    suite.g2_inv(&suite.g2_mul(&epq, &ys))
}

pub fn key_from_parts<B: Backend>(suite: &GroupSuite<B>, p: B::G1, y: B::G2, q: B::G1, s: Scalar) -> SchemeKeyPair<B> {
    let v = public_value(suite, &p, &y, &q, &s);
    SchemeKeyPair { public: PublicKey::Owfid(OwfidPublic { p, y, v }), secret: SecretKey::Owfid(OwfidSecret { q, s }) }
}

/// `e(P, Q) · y^s · v = 1`.
pub fn key_equation_holds<B: Backend>(suite: &GroupSuite<B>, pk: &OwfidPublic<B>, sk: &OwfidSecret<B>) -> bool {
    public_value(suite, &pk.p, &pk.y, &sk.q, &sk.s) == pk.v
}

pub fn commit<B: Backend, R: Rng + ?Sized>(
    suite: &GroupSuite<B>,
    pk: &OwfidPublic<B>,
    rng: &mut R,
) -> (B::G2, OwfidWitness<B>) {
    let witness = OwfidWitness { r_point: suite.random_g1(rng), r: suite.random_scalar(rng) };
    (commit_with(suite, pk, &witness), witness)
}

/// `x = e(P, R) · y^r`; one pairing and one `G2` exponentiation.
pub fn commit_with<B: Backend>(suite: &GroupSuite<B>, pk: &OwfidPublic<B>, w: &OwfidWitness<B>) -> B::G2 {
    let e = suite.pairing(&pk.p, &w.r_point);
    suite.g2_mul(&e, &suite.g2_exp(&pk.y, &w.r))
}

pub fn sample_challenge<B: Backend, R: Rng + ?Sized>(suite: &GroupSuite<B>, rng: &mut R) -> Scalar {
    suite.random_nonzero_scalar(rng)
}

/// `(T, a) = (R · Q^m, r + m·s)`; one `G1` exponentiation.
pub fn respond<B: Backend>(
    suite: &GroupSuite<B>,
    sk: &OwfidSecret<B>,
    w: &OwfidWitness<B>,
    m: &Scalar,
) -> Result<(B::G1, Scalar), SchemeError> {
    if m.is_zero() {
        return Err(SchemeError::ZeroChallenge);
    }
    let t = suite.g1_mul(&w.r_point, &suite.g1_exp(&sk.q, m));
    Ok((t, w.r + *m * sk.s))
}

/// `e(P, T) · y^a · v^m = x`; one pairing and two `G2` exponentiations.
pub fn verify<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &OwfidPublic<B>,
    x: &B::G2,
    m: &Scalar,
    t: &B::G1,
    a: &Scalar,
) -> Decision {
    let e = suite.pairing(&pk.p, t);
    let ya = suite.g2_exp(&pk.y, a);
    let vm = suite.g2_exp(&pk.v, m);
    Decision::from_bool(suite.g2_mul(&suite.g2_mul(&e, &ya), &vm) == *x)
}

/// Every secret `(Q, s)` matching `pk`, by enumeration; small `p` only.
pub fn all_secrets<B: Backend>(suite: &GroupSuite<B>, pk: &OwfidPublic<B>) -> Vec<OwfidSecret<B>> {
    let g = suite.generator();
    let mut out = Vec::new();
    for e in 0..suite.order() {
        let q = suite.g1_pow_raw(&g, &suite.scalar(e));
        for s in 0..suite.order() {
            let sk = OwfidSecret { q: q.clone(), s: suite.scalar(s) };
            if key_equation_holds(suite, pk, &sk) {
                out.push(sk);
            }
        }
    }
    out
}

/// How many prover coin pairs `(R, r)` yield each transcript `(x, T, a)`
/// for challenge `m` under `sk`. Enumerates all `p^2` coins, uncounted.
pub fn transcript_counts<B: Backend>(
    suite: &GroupSuite<B>,
    pk: &OwfidPublic<B>,
    sk: &OwfidSecret<B>,
    m: &Scalar,
) -> HashMap<(B::G2, B::G1, Scalar), u64> {
    let quiet = suite.fork();
    let g = quiet.generator();
    let mut counts = HashMap::new();
    for e in 0..quiet.order() {
        let r_point = quiet.g1_pow_raw(&g, &quiet.scalar(e));
        for r in 0..quiet.order() {
            let w = OwfidWitness { r_point: r_point.clone(), r: quiet.scalar(r) };
            let x = commit_with(&quiet, pk, &w);
            if let Ok((t, a)) = respond(&quiet, sk, &w, m) {
                *counts.entry((x, t, a)).or_insert(0) += 1;
            }
        }
    }
    counts
}
