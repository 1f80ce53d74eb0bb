//! Seeded pseudo-random inputs for benchmarks and tests.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::series::TimeSeries;

/// A small seeded generator; the same seed always yields the same inputs.
#[derive(Debug, Clone)]
pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.0.gen()
    }

    /// Uniform in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    /// Uniform in `[lo, hi]`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        self.0.gen_range(lo..=hi)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

/// `n` samples of dimension `dim`, values uniform in `[0, 1)`, timestamps
/// `0, 1, …, n-1`.
pub fn random_series(rng: &mut Rng, n: usize, dim: usize) -> TimeSeries {
    let values: Vec<f64> = (0..n * dim).map(|_| rng.unit()).collect();
    let times: Vec<f64> = (0..n).map(|i| i as f64).collect();
    TimeSeries::from_flat(&values, &times, dim).expect("generated series is valid")
}

/// Like [`random_series`] but with irregular gaps between timestamps, drawn
/// uniformly from `[0.25, 1.75)`, starting at a random offset in `[0, 1)`.
pub fn random_series_irregular(rng: &mut Rng, n: usize, dim: usize) -> TimeSeries {
    let values: Vec<f64> = (0..n * dim).map(|_| rng.unit()).collect();
    let mut t = rng.unit();
    let times: Vec<f64> = (0..n)
        .map(|_| {
            let now = t;
            t += 0.25 + 1.5 * rng.unit();
            now
        })
        .collect();
    TimeSeries::from_flat(&values, &times, dim).expect("generated series is valid")
}

/// `n` symbols drawn uniformly from `alphabet`.
pub fn random_symbols(rng: &mut Rng, n: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..n).map(|_| *rng.pick(alphabet)).collect()
}
