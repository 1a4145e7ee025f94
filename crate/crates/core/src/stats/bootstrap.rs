use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub const DEFAULT_ITERATIONS: usize = 10_000;
pub const DEFAULT_LEVEL: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCi {
    pub level: f64,
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
    pub seed: u64,
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let i = h.floor() as usize;
    if i + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    sorted[i] + (h - i as f64) * (sorted[i + 1] - sorted[i])
}

/// Percentile interval of the resampled mean.
///
/// One generator seeded with `seed` draws `n` indices per iteration
/// (iteration-major). The interval is clamped to `[min, max]` of the
/// data, where every resampled mean lies mathematically.
pub fn bootstrap_ci(values: &[f64], iterations: usize, level: f64, seed: u64) -> Result<BootstrapCi> {
    if values.is_empty() {
        return Err(Error::EmptyInput("bootstrap values"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Range { name: "level", value: level });
    }
    if iterations == 0 {
        return Err(Error::Range { name: "iterations", value: 0.0 });
    }
    let n = values.len();
    let mut rng = SeededRng::new(seed);
    let mut means = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let mut sum = 0.0;
        for _ in 0..n {
            sum += values[rng.below(n as u64) as usize];
        }
        means.push(sum / n as f64);
    }
    means.sort_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(BootstrapCi {
        level,
        lo: quantile(&means, tail).clamp(min, max),
        hi: quantile(&means, 1.0 - tail).clamp(min, max),
        iterations,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_data_is_degenerate() {
        for c in [0.1, 0.814, -3.0] {
            let ci = bootstrap_ci(&[c, c, c], 500, 0.95, 1).unwrap();
            assert_eq!((ci.lo, ci.hi), (c, c));
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let data = [0.2, 0.9, 0.4, 0.7, 0.1];
        let a = bootstrap_ci(&data, 2000, 0.95, 42).unwrap();
        let b = bootstrap_ci(&data, 2000, 0.95, 42).unwrap();
        assert_eq!(a.lo.to_bits(), b.lo.to_bits());
        assert_eq!(a.hi.to_bits(), b.hi.to_bits());
        assert!(a.lo < a.hi);
    }

    #[test]
    fn argument_errors() {
        assert!(bootstrap_ci(&[], 10, 0.95, 1).is_err());
        assert!(bootstrap_ci(&[1.0], 10, 1.0, 1).is_err());
        assert!(bootstrap_ci(&[1.0], 10, 0.0, 1).is_err());
    }

    #[test]
    fn quantile_interpolates() {
        let s = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile(&s, 0.5), 3.0);
        assert_eq!(quantile(&s, 0.125), 1.5);
        assert_eq!(quantile(&s, 1.0), 5.0);
    }
}
