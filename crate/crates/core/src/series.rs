//! Input types shared by every solver: time series, TWED parameters, the
//! lp-norm and the per-series local deletion costs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A timestamped sequence of `dim`-dimensional real samples.
///
/// Internally the samples are stored with one extra leading row holding the
/// zero vector at time zero. The recurrences index samples from 1, and row 0
/// is the virtual predecessor of the first sample, so the solvers never need
/// to special-case the start of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    dim: usize,
    len: usize,
    // (len + 1) * dim, row-major, row 0 all zeros
    values: Vec<f64>,
    // len + 1, entry 0 is 0.0
    times: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series from one vector per sample and matching timestamps.
    pub fn new(samples: Vec<Vec<f64>>, times: Vec<f64>) -> Result<Self> {
        let dim = samples.first().map(Vec::len).unwrap_or(0);
        if let Some((i, s)) = samples.iter().enumerate().find(|(_, s)| s.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "sample {i} has {} components, expected {dim}",
                s.len()
            )));
        }
        let flat: Vec<f64> = samples.into_iter().flatten().collect();
        Self::from_flat(&flat, &times, dim)
    }

    /// Builds a series from a row-major `n × dim` buffer and `n` timestamps.
    pub fn from_flat(values: &[f64], times: &[f64], dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if times.is_empty() {
            return Err(Error::InvalidInput("a series needs at least one sample".into()));
        }
        if values.len() != times.len() * dim {
            return Err(Error::InvalidInput(format!(
                "value buffer has {} entries, expected {} samples × {dim} dimensions = {}",
                values.len(),
                times.len(),
                times.len() * dim
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite value in sample {}",
                i / dim
            )));
        }
        if let Some(i) = times.iter().position(|t| !t.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite timestamp at sample {i}")));
        }
        for (i, w) in times.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::NonIncreasingTime {
                    index: i + 1,
                    previous: w[0],
                    current: w[1],
                });
            }
        }

        let mut padded = Vec::with_capacity(values.len() + dim);
        padded.resize(dim, 0.0);
        padded.extend_from_slice(values);
        let mut padded_times = Vec::with_capacity(times.len() + 1);
        padded_times.push(0.0);
        padded_times.extend_from_slice(times);

        Ok(TimeSeries {
            dim,
            len: times.len(),
            values: padded,
            times: padded_times,
        })
    }

    /// Builds a series with implicit timestamps `0, 1, …, n-1`.
    pub fn with_unit_times(samples: Vec<Vec<f64>>) -> Result<Self> {
        let times = (0..samples.len()).map(|i| i as f64).collect();
        Self::new(samples, times)
    }

    /// One-dimensional series with implicit unit-spaced timestamps.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        let times: Vec<f64> = (0..values.len()).map(|i| i as f64).collect();
        Self::from_flat(values, &times, 1)
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; a series has at least one sample.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sample `i` (0-based).
    pub fn sample(&self, i: usize) -> &[f64] {
        self.point(i + 1)
    }

    /// The real timestamps, without the virtual leading zero.
    pub fn times(&self) -> &[f64] {
        &self.times[1..]
    }

    /// The samples as one row-major `n × dim` slice.
    pub fn values(&self) -> &[f64] {
        &self.values[self.dim..]
    }

    /// Sample at 1-based position `k`; `k == 0` is the zero vector.
    #[inline]
    pub(crate) fn point(&self, k: usize) -> &[f64] {
        &self.values[k * self.dim..(k + 1) * self.dim]
    }

    /// Timestamp at 1-based position `k`; `k == 0` is time zero.
    #[inline]
    pub(crate) fn time(&self, k: usize) -> f64 {
        self.times[k]
    }

    pub(crate) fn padded_times(&self) -> &[f64] {
        &self.times
    }

    pub(crate) fn padded_values(&self) -> &[f64] {
        &self.values
    }
}

/// Parameters of the TWED recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwedParams {
    /// Stiffness: cost per unit of timestamp difference.
    pub nu: f64,
    /// Constant penalty added to every deletion.
    pub lambda: f64,
    /// Exponent of the lp-norm used between samples.
    pub degree: u32,
}

impl TwedParams {
    pub fn new(nu: f64, lambda: f64, degree: u32) -> Result<Self> {
        let params = TwedParams { nu, lambda, degree };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu.is_finite() && self.nu >= 0.0) {
            return Err(Error::InvalidInput(format!("nu must be finite and >= 0, got {}", self.nu)));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "lambda must be finite and >= 0, got {}",
                self.lambda
            )));
        }
        if self.degree == 0 {
            return Err(Error::InvalidInput("degree must be >= 1".into()));
        }
        Ok(())
    }

    /// True when the distance is a proper metric (`nu > 0`, `lambda >= 0`).
    pub fn is_metric(&self) -> bool {
        self.nu > 0.0 && self.lambda >= 0.0
    }
}

impl Default for TwedParams {
    fn default() -> Self {
        TwedParams {
            nu: 1.0,
            lambda: 0.0,
            degree: 2,
        }
    }
}

#[inline]
fn accumulate(magnitudes: impl Iterator<Item = f64>, p: u32) -> f64 {
    match p {
        1 => magnitudes.sum(),
        2 => magnitudes.map(|m| m * m).sum::<f64>().sqrt(),
        _ => magnitudes
            .map(|m| m.powi(p as i32))
            .sum::<f64>()
            .powf(1.0 / p as f64),
    }
}

/// `(Σ |x_i|^p)^(1/p)`.
///
/// A one-component vector returns `|x_0|` exactly, whatever `p` is.
///
/// ```
/// use warpband::lp_norm;
/// assert_eq!(lp_norm(&[3.0, 4.0], 2).unwrap(), 5.0);
/// assert_eq!(lp_norm(&[-7.5], 3).unwrap(), 7.5);
/// ```
pub fn lp_norm(x: &[f64], p: u32) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::InvalidInput("lp_norm of an empty vector".into()));
    }
    if p == 0 {
        return Err(Error::InvalidInput("lp_norm degree must be >= 1".into()));
    }
    if x.len() == 1 {
        return Ok(x[0].abs());
    }
    Ok(accumulate(x.iter().map(|v| v.abs()), p))
}

/// `lp_norm(x - y, p)` without materializing the difference. Bit-identical to
/// calling [`lp_norm`] on the difference vector.
#[inline]
pub fn lp_distance(x: &[f64], y: &[f64], p: u32) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    if x.len() == 1 {
        return (x[0] - y[0]).abs();
    }
    accumulate(x.iter().zip(y).map(|(a, b)| (a - b).abs()), p)
}

/// Checks that a pair of series can be compared under `params`.
pub(crate) fn check_pair(a: &TimeSeries, b: &TimeSeries, params: &TwedParams) -> Result<()> {
    params.validate()?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Norm distances between consecutive samples of one series.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCosts(Vec<f64>);

impl LocalCosts {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for LocalCosts {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// `out[i] = lp_norm(S[i] - S[i-1], p)`, with `S[-1]` the zero vector.
pub fn local_costs(series: &TimeSeries, p: u32) -> LocalCosts {
    LocalCosts(
        (1..=series.len())
            .map(|k| lp_distance(series.point(k), series.point(k - 1), p))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn norm_examples() {
        assert_eq!(lp_norm(&[3.0, 4.0], 2).unwrap(), 5.0);
        assert_eq!(lp_norm(&[0.0, 0.0, 0.0], 3).unwrap(), 0.0);
        assert_eq!(lp_norm(&[1.0, 1.0, 1.0, 1.0], 1).unwrap(), 4.0);
        assert_eq!(lp_norm(&[-2.25], 7).unwrap(), 2.25);
    }

    #[test]
    fn norm_rejects_empty() {
        assert!(matches!(lp_norm(&[], 2), Err(Error::InvalidInput(_))));
        assert!(lp_norm(&[1.0], 0).is_err());
    }

    #[test]
    fn local_cost_examples() {
        let s = TimeSeries::from_scalars(&[1.0, 3.0, 6.0]).unwrap();
        assert_eq!(local_costs(&s, 1).as_slice(), &[1.0, 2.0, 3.0]);

        let s = TimeSeries::from_scalars(&[0.0]).unwrap();
        assert_eq!(local_costs(&s, 2).as_slice(), &[0.0]);
    }

    #[test]
    fn series_construction_errors() {
        assert!(TimeSeries::new(vec![], vec![]).is_err());
        assert!(TimeSeries::new(vec![vec![1.0], vec![1.0, 2.0]], vec![0.0, 1.0]).is_err());
        assert!(matches!(
            TimeSeries::new(vec![vec![1.0], vec![2.0]], vec![1.0, 1.0]),
            Err(Error::NonIncreasingTime { index: 1, .. })
        ));
        assert!(TimeSeries::new(vec![vec![f64::NAN]], vec![0.0]).is_err());
        assert!(TimeSeries::from_flat(&[1.0, 2.0, 3.0], &[0.0, 1.0], 2).is_err());
    }

    #[test]
    fn virtual_prefix_is_zero() {
        let s = TimeSeries::new(vec![vec![4.0, 5.0]], vec![2.5]).unwrap();
        assert_eq!(s.point(0), &[0.0, 0.0]);
        assert_eq!(s.time(0), 0.0);
        assert_eq!(s.sample(0), &[4.0, 5.0]);
        assert_eq!(s.times(), &[2.5]);
    }

    #[test]
    fn params_validation() {
        assert!(TwedParams::new(-1.0, 0.0, 2).is_err());
        assert!(TwedParams::new(1.0, -0.1, 2).is_err());
        assert!(TwedParams::new(1.0, 0.0, 0).is_err());
        assert!(TwedParams::new(1.0, 0.0, 2).unwrap().is_metric());
        assert!(!TwedParams::new(0.0, 1.0, 2).unwrap().is_metric());
    }

    fn vector() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1e3f64..1e3, 1..8)
    }

    proptest! {
        #[test]
        fn norm_zero_iff_zero_vector(x in vector(), p in 1u32..6) {
            let n = lp_norm(&x, p).unwrap();
            prop_assert_eq!(n == 0.0, x.iter().all(|v| *v == 0.0));
        }

        #[test]
        fn norm_is_absolutely_homogeneous(x in vector(), c in -50.0f64..50.0, p in 1u32..6) {
            let scaled: Vec<f64> = x.iter().map(|v| c * v).collect();
            let lhs = lp_norm(&scaled, p).unwrap();
            let rhs = c.abs() * lp_norm(&x, p).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn euclidean_matches_sum_of_squares(x in vector()) {
            let direct = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let n = lp_norm(&x, 2).unwrap();
            prop_assert!((n - direct).abs() <= 1e-14 * direct.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn distance_is_norm_of_difference(x in vector(), seed in any::<u64>(), p in 1u32..6) {
            let y: Vec<f64> = x.iter().enumerate()
                .map(|(i, v)| v * 0.5 + ((seed >> (i % 60)) & 0xff) as f64)
                .collect();
            let diff: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
            prop_assert_eq!(lp_distance(&x, &y, p).to_bits(), lp_norm(&diff, p).unwrap().to_bits());
        }

        #[test]
        fn local_costs_recomputed_directly(
            rows in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 3), 1..20),
            p in 1u32..5,
        ) {
            let s = TimeSeries::with_unit_times(rows.clone()).unwrap();
            let costs = local_costs(&s, p);
            prop_assert_eq!(costs.len(), rows.len());
            prop_assert_eq!(costs[0], lp_norm(&rows[0], p).unwrap());
            for i in 1..rows.len() {
                prop_assert!(costs[i] >= 0.0);
                let diff: Vec<f64> = rows[i].iter().zip(&rows[i - 1]).map(|(a, b)| a - b).collect();
                prop_assert_eq!(costs[i], lp_norm(&diff, p).unwrap());
            }
        }
    }
}
