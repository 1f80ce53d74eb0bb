//! Entry points over plain contiguous buffers, for foreign-language bindings.
//!
//! A series is passed as a row-major `n × dim` value buffer plus `n`
//! timestamps. Results are bit-identical to the typed API: these functions
//! only validate and wrap.

use crate::engine::{twed_batch as batch, twed_parallel, BatchSpec, DistanceMatrix, Workers};
use crate::error::{Error, Result};
use crate::series::{TimeSeries, TwedParams};

/// Borrowed view of one series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesView<'a> {
    pub values: &'a [f64],
    pub times: &'a [f64],
}

impl SeriesView<'_> {
    fn to_series(self, dim: usize, label: &str) -> Result<TimeSeries> {
        if self.values.len() != self.times.len() * dim {
            return Err(Error::InvalidInput(format!(
                "{label}: values hold {} entries but {} timestamps × dim {dim} = {} were expected",
                self.values.len(),
                self.times.len(),
                self.times.len() * dim
            )));
        }
        TimeSeries::from_flat(self.values, self.times, dim)
            .map_err(|e| Error::InvalidInput(format!("{label}: {e}")))
    }
}

/// TWED of two flat series sharing dimension `dim`.
pub fn twed(a: SeriesView<'_>, b: SeriesView<'_>, dim: usize, params: &TwedParams, workers: Workers) -> Result<f64> {
    let a = a.to_series(dim, "series A")?;
    let b = b.to_series(dim, "series B")?;
    twed_parallel(&a, &b, params, workers)
}

/// All-pairs matrix between two lists of flat series. `list_b = None`
/// compares `list_a` with itself, and only then may `symmetric` be set.
pub fn twed_batch(
    list_a: &[SeriesView<'_>],
    list_b: Option<&[SeriesView<'_>]>,
    dim: usize,
    params: &TwedParams,
    symmetric: bool,
    workers: Workers,
) -> Result<DistanceMatrix> {
    let convert = |list: &[SeriesView<'_>], side: &str| -> Result<Vec<TimeSeries>> {
        list.iter()
            .enumerate()
            .map(|(i, s)| s.to_series(dim, &format!("list {side}[{i}]")))
            .collect()
    };
    let a = convert(list_a, "A")?;
    let b = list_b.map(|l| convert(l, "B")).transpose()?;
    let spec = match &b {
        None => BatchSpec::self_pairs(&a, *params),
        Some(b) => BatchSpec::cross(&a, b, *params),
    };
    batch(&spec.symmetric(symmetric).workers(workers))
}

/// LCS length of two strings, compared by Unicode scalar value.
pub fn lcs_length(s: &str, t: &str) -> usize {
    let s: Vec<char> = s.chars().collect();
    let t: Vec<char> = t.chars().collect();
    crate::lcs_band(&s, &t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{random_series_irregular, Rng};

    fn view(s: &TimeSeries) -> SeriesView<'_> {
        SeriesView {
            values: s.values(),
            times: s.times(),
        }
    }

    #[test]
    fn examples() {
        let x = [1.0, 2.0, 3.0];
        let t = [0.0, 1.0, 2.0];
        let v = SeriesView { values: &x, times: &t };
        assert_eq!(twed(v, v, 1, &TwedParams::default(), Workers::Fixed(1)).unwrap(), 0.0);

        let a = SeriesView { values: &[2.0], times: &[1.0] };
        let b = SeriesView { values: &[5.0], times: &[1.0] };
        let params = TwedParams::new(1.0, 0.0, 1).unwrap();
        assert_eq!(twed(a, b, 1, &params, Workers::Fixed(1)).unwrap(), 3.0);

        assert_eq!(lcs_length("", "AB"), 0);
        assert_eq!(lcs_length("AAAA", "AAAA"), 4);
        assert_eq!(lcs_length("ABCBDAB", "BDCABA"), 4);
    }

    #[test]
    fn shape_errors_name_the_series() {
        let a = SeriesView { values: &[1.0, 2.0, 3.0], times: &[0.0, 1.0] };
        let err = twed(a, a, 2, &TwedParams::default(), Workers::Fixed(1)).unwrap_err();
        assert!(err.to_string().contains("series A"));
        assert!(err.to_string().contains("dim 2"));
    }

    #[test]
    fn batch_matches_typed_api() {
        let mut rng = Rng::new(21);
        let owned: Vec<TimeSeries> = (0..3)
            .map(|_| {
                let n = rng.between(3, 30);
                random_series_irregular(&mut rng, n, 2)
            })
            .collect();
        let views: Vec<_> = owned.iter().map(view).collect();
        let params = TwedParams::default();
        let m = twed_batch(&views, None, 2, &params, true, Workers::Fixed(2)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let single = twed(views[i], views[j], 2, &params, Workers::Fixed(1)).unwrap();
                assert_eq!(m.get(i, j).to_bits(), single.to_bits());
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert!(twed_batch(&views, Some(&views), 2, &params, true, Workers::Fixed(1)).is_err());
    }
}
