//! Binomial tolerances for Monte-Carlo checks.

/// Standard deviation of the success rate of `n` Bernoulli(`p`) trials.
pub fn binomial_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// `wins / trials` lies within three standard deviations of `p`.
///
/// For `p = 0` this degenerates to exact equality.
pub fn within_3sigma(wins: u64, trials: u64, p: f64) -> bool {
    let rate = wins as f64 / trials as f64;
    (rate - p).abs() <= 3.0 * binomial_sigma(p, trials) + f64::EPSILON
}

/// `wins / trials ≥ bound − 3σ(bound)`.
pub fn at_least_3sigma(wins: u64, trials: u64, bound: f64) -> bool {
    let rate = wins as f64 / trials as f64;
    rate >= bound - 3.0 * binomial_sigma(bound, trials)
}

/// `⌈1/ε⌉`-style probe budget; `None` for non-positive `ε`.
pub fn ceil_budget(numerator: f64, eps: f64) -> Option<u64> {
    (eps > 0.0).then(|| (numerator / eps).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances() {
        assert!(within_3sigma(500, 1000, 0.5));
        assert!(!within_3sigma(600, 1000, 0.5));
        assert!(within_3sigma(0, 1000, 0.0));
        assert!(!within_3sigma(1, 1000, 0.0));
        assert!(at_least_3sigma(90, 500, 0.1998));
        assert!(!at_least_3sigma(50, 500, 0.1998));
        assert_eq!(ceil_budget(1.0, 0.3), Some(4));
        assert_eq!(ceil_budget(2.0, 0.5), Some(4));
        assert_eq!(ceil_budget(1.0, 0.0), None);
    }
}
