//! Small deterministic pseudo-random source for seeded evaluation points.
//!
//! Verification reports must be byte-identical across runs with the same
//! seed, so the generator is a fixed splitmix64 rather than an external RNG
//! whose stream could shift between library versions.

use crate::exactmath::{BigInt, BigRat};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[lo, hi]` (inclusive).
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.next_u64() % (hi - lo + 1)
    }

    /// A positive rational with numerator and denominator drawn uniformly
    /// from `[2, 10^6]`. A nonzero rational function vanishes at such a point
    /// with negligible probability.
    pub fn rational(&mut self) -> BigRat {
        let numer = self.range(2, 1_000_000);
        let denom = self.range(2, 1_000_000);
        BigRat::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// A random rational point in the given dimension.
    pub fn rational_point(&mut self, vars: usize) -> Vec<BigRat> {
        (0..vars).map(|_| self.rational()).collect()
    }
}
