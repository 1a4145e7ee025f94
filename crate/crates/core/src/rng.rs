//! Seeded sampling with a fixed, portable algorithm.
//!
//! Generator: xoshiro256** 1.0, state filled from the 64-bit seed with
//! SplitMix64 (four successive outputs, in order). Bounded integers use
//! Lemire's widening-multiply rejection method. Sampling without
//! replacement is a partial Fisher–Yates shuffle over `0..n`.
//!
//! Any implementation following these three steps reproduces our draws
//! exactly; `tests/oracle/golden_report.py` carries a second one.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// Name recorded in reports next to every seed.
pub const ALGORITHM: &str = "xoshiro256**/splitmix64/lemire-v1";

#[derive(Debug, Clone)]
pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..n`. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let mut m = u128::from(self.next_u64()) * u128::from(n);
        let mut low = m as u64;
        if low < n {
            let threshold = n.wrapping_neg() % n;
            while low < threshold {
                m = u128::from(self.next_u64()) * u128::from(n);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    /// `k` distinct indices from `0..n`, in draw order.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        let k = k.min(n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}
