//! Minimal deterministic PRNG for seeded self-tests and sweeps.
//!
//! SplitMix64: identical output on every platform, no external dependency.

use crate::coeff_ring::Rational;
use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small random rational with numerator in `-bound..=bound` and denominator in `1..=den`.
    pub fn rational(&mut self, bound: i64, den: i64) -> Rational {
        let n = self.int_in(-bound, bound);
        let d = self.int_in(1, den);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Nonzero variant of [`rational`](Self::rational).
    pub fn nonzero_rational(&mut self, bound: i64, den: i64) -> Rational {
        loop {
            let r = self.rational(bound, den);
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }
}
