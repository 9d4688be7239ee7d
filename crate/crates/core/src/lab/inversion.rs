//! Pairing inversion and the CDH and DDH algorithms built on it.

use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Backend, DiscreteLog, GroupSuite};

pub trait PairingInverter<B: Backend> {
    /// A claimed `h` with `e(g, h) = x`.
    fn invert(&mut self, suite: &GroupSuite<B>, g: &B::G1, x: &B::G2, rng: &mut ChaCha20Rng) -> B::G1;
}

/// Inverts exactly by dividing discrete logarithms.
#[derive(Debug, Default, Clone, Copy)]
pub struct PerfectInverter;

impl<B: DiscreteLog> PairingInverter<B> for PerfectInverter {
    fn invert(&mut self, suite: &GroupSuite<B>, g: &B::G1, x: &B::G2, _rng: &mut ChaCha20Rng) -> B::G1 {
        let backend = suite.backend();
        let k = suite.scalar(backend.dlog_g1(g).expect("subgroup element"));
        let t = suite.scalar(backend.dlog_g2(x).expect("subgroup element"));
        match t.div(&k) {
            Ok(j) => suite.g1_pow_raw(&suite.generator(), &j),
            Err(_) => suite.g1_identity(),
        }
    }
}

/// Correct with probability `eps`, otherwise a uniformly random point.
#[derive(Debug, Clone, Copy)]
pub struct NoisyInverter {
    pub eps: f64,
}

impl<B: DiscreteLog> PairingInverter<B> for NoisyInverter {
    fn invert(&mut self, suite: &GroupSuite<B>, g: &B::G1, x: &B::G2, rng: &mut ChaCha20Rng) -> B::G1 {
        if rng.gen_bool(self.eps) {
            PerfectInverter.invert(suite, g, x, rng)
        } else {
            suite.random_g1(rng)
        }
    }
}

/// Solves CDH on `(g, g^a, g^b)` with one inversion of `e(g^a, g^b)`.
pub fn invert_to_cdh<B: Backend, I: PairingInverter<B> + ?Sized>(
    inverter: &mut I,
    suite: &GroupSuite<B>,
    g: &B::G1,
    ga: &B::G1,
    gb: &B::G1,
    rng: &mut ChaCha20Rng,
) -> B::G1 {
    let y = suite.pairing(ga, gb);
    inverter.invert(suite, g, &y, rng)
}

/// Decides whether `(y, y^a, y^b, y^c)` in `G2` has `c ≡ ab`, using four
/// inversions against a random base `g`.
pub fn invert_to_ddh<B: Backend, I: PairingInverter<B> + ?Sized>(
    inverter: &mut I,
    suite: &GroupSuite<B>,
    y: &B::G2,
    ya: &B::G2,
    yb: &B::G2,
    yc: &B::G2,
    rng: &mut ChaCha20Rng,
) -> bool {
    let g = suite.random_g1_generator(rng);
    let h1 = inverter.invert(suite, &g, y, rng);
    let h2 = inverter.invert(suite, &g, ya, rng);
    let h3 = inverter.invert(suite, &g, yb, rng);
    let h4 = inverter.invert(suite, &g, yc, rng);
    suite.pairing(&h1, &h4) == suite.pairing(&h2, &h3)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::algebra::Transparent;
    use crate::stats::{at_least_3sigma, within_3sigma};

    #[test]
    fn cdh_worked_example() {
        let b = Transparent::new(11).unwrap();
        let suite = GroupSuite::new(b);
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        let h = invert_to_cdh(&mut PerfectInverter, &suite, &b.g1(1), &b.g1(3), &b.g1(4), &mut rng);
        assert_eq!(h, b.g1(1));
    }

    #[test]
    fn cdh_with_random_base() {
        let b = Transparent::new(101).unwrap();
        let suite = GroupSuite::new(b);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (k, a, x) = (rng.gen_range(1..101), rng.gen_range(0..101), rng.gen_range(0..101));
            let h = invert_to_cdh(&mut PerfectInverter, &suite, &b.g1(k), &b.g1(k * a), &b.g1(k * x), &mut rng);
            assert_eq!(h, b.g1(k * a * x % 101));
        }
    }

    #[test]
    fn noisy_cdh_rate() {
        let b = Transparent::new(1009).unwrap();
        let suite = GroupSuite::new(b);
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let mut inv = NoisyInverter { eps: 0.4 };
        let mut wins = 0;
        for _ in 0..1000 {
            let (a, x) = (rng.gen_range(0..1009), rng.gen_range(0..1009));
            let h = invert_to_cdh(&mut inv, &suite, &b.g1(1), &b.g1(a), &b.g1(x), &mut rng);
            wins += (h == b.g1(a * x % 1009)) as u64;
        }
        assert!(within_3sigma(wins, 1000, 0.4), "{wins}");
    }

    #[test]
    fn ddh_exhaustive_at_11() {
        let b = Transparent::new(11).unwrap();
        let suite = GroupSuite::new(b);
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for a in 0..11 {
            for x in 0..11 {
                for c in 0..11 {
                    let got =
                        invert_to_ddh(&mut PerfectInverter, &suite, &b.g2(1), &b.g2(a), &b.g2(x), &b.g2(c), &mut rng);
                    assert_eq!(got, c == a * x % 11, "({a},{x},{c})");
                }
            }
        }
    }

    #[test]
    fn noisy_ddh_on_dh_tuples() {
        let b = Transparent::new(1009).unwrap();
        let suite = GroupSuite::new(b);
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let eps: f64 = 0.7;
        let mut inv = NoisyInverter { eps };
        let mut wins = 0;
        for _ in 0..1000 {
            let (a, x) = (rng.gen_range(0..1009), rng.gen_range(0..1009));
            wins += invert_to_ddh(&mut inv, &suite, &b.g2(1), &b.g2(a), &b.g2(x), &b.g2(a * x % 1009), &mut rng) as u64;
        }
        assert!(at_least_3sigma(wins, 1000, eps.powi(4)), "{wins}");
    }
}
