//! Timing harness comparing the band solver with the quadratic reference on
//! seeded random pairs.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::engine::{twed_parallel, Workers};
use crate::error::{Error, Result};
use crate::reference::twed_reference;
use crate::series::TwedParams;
use crate::synth::{random_series, Rng};

/// Relative tolerance for the band/reference parity check.
pub const PARITY_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub params: TwedParams,
    pub workers: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest size the reference solver is run at.
    pub reference_cutoff: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            params: TwedParams::default(),
            workers: Workers::Auto.count(),
            trials: 3,
            seed: 42,
            reference_cutoff: 8192,
        }
    }
}

/// One row of the timing table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub size: usize,
    pub workers: usize,
    /// Fastest band time over all trials, seconds.
    pub band_seconds: f64,
    /// Fastest reference time, absent above the cutoff.
    pub reference_seconds: Option<f64>,
    /// `reference_seconds / band_seconds`.
    pub speedup: Option<f64>,
    pub band_value: f64,
    pub reference_value: Option<f64>,
    /// Band value agrees with the reference (within [`PARITY_RTOL`]) or,
    /// when the reference is skipped, bit-equals a single-worker band solve.
    pub parity: bool,
}

fn fastest<T>(trials: usize, mut run: impl FnMut() -> Result<T>) -> Result<(f64, T)> {
    let mut best = f64::INFINITY;
    let mut value = None;
    for _ in 0..trials.max(1) {
        let start = Instant::now();
        let v = run()?;
        best = best.min(start.elapsed().as_secs_f64());
        value = Some(v);
    }
    Ok((best, value.expect("at least one trial")))
}

/// Times one seeded pair of each size. Sizes are processed in order; the RNG
/// stream is shared, so a given `(sizes, seed)` always yields the same pairs.
pub fn bench(sizes: &[usize], config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if sizes.is_empty() {
        return Err(Error::InvalidInput("no sizes to benchmark".into()));
    }
    if let Some(bad) = sizes.iter().find(|&&n| n == 0) {
        return Err(Error::InvalidInput(format!("benchmark size must be positive, got {bad}")));
    }
    config.params.validate()?;
    let mut rng = Rng::new(config.seed);
    let workers = config.workers.max(1);
    sizes
        .iter()
        .map(|&size| {
            let a = random_series(&mut rng, size, 1);
            let b = random_series(&mut rng, size, 1);
            let (band_seconds, band_value) =
                fastest(config.trials, || twed_parallel(&a, &b, &config.params, workers))?;

            let (reference_seconds, reference_value) = if size <= config.reference_cutoff {
                let (t, v) = fastest(config.trials, || twed_reference(&a, &b, &config.params))?;
                (Some(t), Some(v))
            } else {
                (None, None)
            };

            let parity = match reference_value {
                Some(r) => (band_value - r).abs() <= PARITY_RTOL * r.abs().max(1.0),
                None if workers > 1 => {
                    crate::twed_band(&a, &b, &config.params)?.to_bits() == band_value.to_bits()
                }
                None => true,
            };

            Ok(BenchRecord {
                size,
                workers,
                band_seconds,
                reference_seconds,
                speedup: reference_seconds.map(|r| r / band_seconds),
                band_value,
                reference_value,
                parity,
            })
        })
        .collect()
}
