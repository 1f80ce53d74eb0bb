//! Quadratic-memory solvers that fill the whole dynamic-programming matrix.
//!
//! These are the baselines the band solvers are checked against. They are kept
//! deliberately plain: a row-major matrix, two nested loops, no reuse.

use crate::error::Result;
use crate::series::{check_pair, local_costs, lp_distance, TimeSeries, TwedParams};

/// The full `(nA + 1) × (nB + 1)` TWED cost matrix.
///
/// Row 0 and column 0 are the boundary: `[0][0] = 0`, every other boundary
/// cell is `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl CostMatrix {
    fn boundary(rows: usize, cols: usize) -> Self {
        let mut entries = vec![f64::INFINITY; rows * cols];
        entries[0] = 0.0;
        CostMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// `nA + 1`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `nB + 1`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// The distance, `entries[nA][nB]`.
    pub fn final_cost(&self) -> f64 {
        self.entries[self.entries.len() - 1]
    }
}

/// Fills the full TWED matrix for `a` against `b`.
pub fn twed_reference_matrix(a: &TimeSeries, b: &TimeSeries, params: &TwedParams) -> Result<CostMatrix> {
    check_pair(a, b, params)?;
    let p = params.degree;
    let (nu, lambda) = (params.nu, params.lambda);
    let da = local_costs(a, p);
    let db = local_costs(b, p);

    let mut dp = CostMatrix::boundary(a.len() + 1, b.len() + 1);
    let cols = dp.cols;
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let up = dp.entries[(i - 1) * cols + j];
            let left = dp.entries[i * cols + j - 1];
            let diag = dp.entries[(i - 1) * cols + j - 1];

            let delete_a = up + da[i - 1] + nu * (a.time(i) - a.time(i - 1)).abs() + lambda;
            let delete_b = left + db[j - 1] + nu * (b.time(j) - b.time(j - 1)).abs() + lambda;
            let matched = diag
                + lp_distance(a.point(i), b.point(j), p)
                + lp_distance(a.point(i - 1), b.point(j - 1), p)
                + nu * ((a.time(i) - b.time(j)).abs() + (a.time(i - 1) - b.time(j - 1)).abs());

            dp.entries[i * cols + j] = delete_a.min(delete_b).min(matched);
        }
    }
    Ok(dp)
}

/// TWED between `a` and `b` using the full quadratic matrix.
///
/// ```
/// use warpband::{twed_reference, TimeSeries, TwedParams};
/// let a = TimeSeries::new(vec![vec![2.0]], vec![1.0]).unwrap();
/// let b = TimeSeries::new(vec![vec![5.0]], vec![1.0]).unwrap();
/// let params = TwedParams::new(1.0, 0.0, 1).unwrap();
/// assert_eq!(twed_reference(&a, &b, &params).unwrap(), 3.0);
/// ```
pub fn twed_reference(a: &TimeSeries, b: &TimeSeries, params: &TwedParams) -> Result<f64> {
    Ok(twed_reference_matrix(a, b, params)?.final_cost())
}

/// Classic quadratic-table longest common subsequence length.
pub fn lcs_reference<T: PartialEq>(s: &[T], t: &[T]) -> usize {
    let cols = t.len() + 1;
    let mut table = vec![0usize; (s.len() + 1) * cols];
    for i in 1..=s.len() {
        for j in 1..=t.len() {
            table[i * cols + j] = if s[i - 1] == t[j - 1] {
                table[(i - 1) * cols + j - 1] + 1
            } else {
                table[(i - 1) * cols + j].max(table[i * cols + j - 1])
            };
        }
    }
    table[table.len() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{random_series_irregular, Rng};

    fn series(rng: &mut Rng, max_len: usize, dim: usize) -> TimeSeries {
        let n = rng.between(1, max_len);
        random_series_irregular(rng, n, dim)
    }
    use crate::Error;

    /// Sums step costs over every monotone path from (0,0) to (nA,nB) and
    /// returns the cheapest. Paths that touch the boundary after the origin
    /// are infinite and skipped.
    fn brute_force_twed(a: &TimeSeries, b: &TimeSeries, params: &TwedParams) -> f64 {
        fn norm(x: &[f64], y: &[f64], p: u32) -> f64 {
            let s: f64 = x.iter().zip(y).map(|(u, v)| (u - v).abs().powi(p as i32)).sum();
            s.powf(1.0 / p as f64)
        }
        let zero = vec![0.0; a.dim()];
        let pa = |k: usize| if k == 0 { zero.as_slice() } else { a.sample(k - 1) };
        let pb = |k: usize| if k == 0 { zero.as_slice() } else { b.sample(k - 1) };
        let ta = |k: usize| if k == 0 { 0.0 } else { a.times()[k - 1] };
        let tb = |k: usize| if k == 0 { 0.0 } else { b.times()[k - 1] };
        let (nu, lambda, p) = (params.nu, params.lambda, params.degree);

        let step = |from: (usize, usize), to: (usize, usize)| -> f64 {
            let (i, j) = to;
            match (to.0 - from.0, to.1 - from.1) {
                (1, 0) => norm(pa(i), pa(i - 1), p) + nu * (ta(i) - ta(i - 1)).abs() + lambda,
                (0, 1) => norm(pb(j), pb(j - 1), p) + nu * (tb(j) - tb(j - 1)).abs() + lambda,
                _ => {
                    norm(pa(i), pb(j), p)
                        + norm(pa(i - 1), pb(j - 1), p)
                        + nu * ((ta(i) - tb(j)).abs() + (ta(i - 1) - tb(j - 1)).abs())
                }
            }
        };

        let mut best = f64::INFINITY;
        let mut path = vec![(0usize, 0usize)];
        fn walk(
            path: &mut Vec<(usize, usize)>,
            end: (usize, usize),
            step: &dyn Fn((usize, usize), (usize, usize)) -> f64,
            best: &mut f64,
        ) {
            let here = *path.last().unwrap();
            if here == end {
                let cost: f64 = path.windows(2).map(|w| step(w[0], w[1])).sum();
                *best = best.min(cost);
                return;
            }
            for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
                let next = (here.0 + di, here.1 + dj);
                if next.0 > end.0 || next.1 > end.1 || next.0 == 0 || next.1 == 0 {
                    continue;
                }
                path.push(next);
                walk(path, end, step, best);
                path.pop();
            }
        }
        walk(&mut path, (a.len(), b.len()), &step, &mut best);
        best
    }

    fn brute_force_lcs(s: &[u8], t: &[u8]) -> usize {
        fn is_subsequence(needle: &[u8], hay: &[u8]) -> bool {
            let mut it = hay.iter();
            needle.iter().all(|c| it.any(|h| h == c))
        }
        let mut best = 0;
        for mask in 0u32..(1 << s.len()) {
            let sub: Vec<u8> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            if sub.len() > best && is_subsequence(&sub, t) {
                best = sub.len();
            }
        }
        best
    }

    #[test]
    fn single_sample_match() {
        let a = TimeSeries::new(vec![vec![2.0]], vec![1.0]).unwrap();
        let b = TimeSeries::new(vec![vec![5.0]], vec![1.0]).unwrap();
        let params = TwedParams::new(1.0, 0.0, 1).unwrap();
        assert_eq!(twed_reference(&a, &b, &params).unwrap(), 3.0);
    }

    #[test]
    fn identical_series_are_zero() {
        let mut rng = Rng::new(7);
        for _ in 0..20 {
            let dim = rng.between(1, 4);
            let a = series(&mut rng, 30, dim);
            let params = TwedParams::new(rng.unit() * 2.0, rng.unit(), 1 + rng.below(3) as u32).unwrap();
            assert_eq!(twed_reference(&a, &a, &params).unwrap(), 0.0);
        }
    }

    #[test]
    fn matrix_boundary_and_final_cell() {
        let a = TimeSeries::from_scalars(&[1.0, 2.0, 0.5]).unwrap();
        let b = TimeSeries::from_scalars(&[0.0, 2.5]).unwrap();
        let params = TwedParams::default();
        let m = twed_reference_matrix(&a, &b, &params).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 3));
        assert_eq!(m.get(0, 0), 0.0);
        for i in 1..m.rows() {
            assert_eq!(m.get(i, 0), f64::INFINITY);
        }
        for j in 1..m.cols() {
            assert_eq!(m.get(0, j), f64::INFINITY);
        }
        for i in 1..m.rows() {
            assert!(m.row(i)[1..].iter().all(|v| v.is_finite() && *v >= 0.0));
        }
        assert_eq!(m.final_cost(), twed_reference(&a, &b, &params).unwrap());

        let one = TimeSeries::from_scalars(&[4.0]).unwrap();
        assert_eq!(twed_reference_matrix(&one, &one, &params).unwrap().get(1, 1), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = TimeSeries::from_scalars(&[1.0]).unwrap();
        let b = TimeSeries::with_unit_times(vec![vec![1.0, 2.0]]).unwrap();
        assert_eq!(
            twed_reference(&a, &b, &TwedParams::default()),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn agrees_with_path_enumeration() {
        let mut rng = Rng::new(2024);
        for _ in 0..150 {
            let dim = 1 + rng.below(3);
            let a = series(&mut rng, 6, dim);
            let b = series(&mut rng, 6, dim);
            let params = TwedParams::new(
                [0.0, 0.1, 1.0][rng.below(3)],
                [0.0, 0.5, 1.0][rng.below(3)],
                1 + rng.below(3) as u32,
            )
            .unwrap();
            let dp = twed_reference(&a, &b, &params).unwrap();
            let brute = brute_force_twed(&a, &b, &params);
            assert!(
                (dp - brute).abs() <= 1e-12 * brute.max(1.0),
                "dp={dp} brute={brute} a={a:?} b={b:?} params={params:?}"
            );
        }
    }

    #[test]
    fn exactly_symmetric() {
        let mut rng = Rng::new(99);
        for _ in 0..100 {
            let dim = 1 + rng.below(3);
            let a = series(&mut rng, 40, dim);
            let b = series(&mut rng, 40, dim);
            let params = TwedParams::new(rng.unit(), rng.unit(), 1 + rng.below(3) as u32).unwrap();
            let ab = twed_reference(&a, &b, &params).unwrap();
            let ba = twed_reference(&b, &a, &params).unwrap();
            assert_eq!(ab.to_bits(), ba.to_bits());
        }
    }

    #[test]
    fn lambda_monotone() {
        let mut rng = Rng::new(5);
        for _ in 0..50 {
            let a = series(&mut rng, 25, 2);
            let b = series(&mut rng, 25, 2);
            let mut last = 0.0;
            for lambda in [0.0, 0.1, 0.5, 1.0, 3.0] {
                let d = twed_reference(&a, &b, &TwedParams::new(0.5, lambda, 2).unwrap()).unwrap();
                assert!(d >= last);
                last = d;
            }
        }
    }

    #[test]
    fn triangle_inequality_in_metric_mode() {
        let mut rng = Rng::new(31337);
        for _ in 0..100 {
            let dim = 1 + rng.below(3);
            let s: Vec<_> = (0..3).map(|_| series(&mut rng, 20, dim)).collect();
            let params = TwedParams::new(0.1 + rng.unit(), rng.unit(), 1 + rng.below(2) as u32).unwrap();
            let d = |x: &TimeSeries, y: &TimeSeries| twed_reference(x, y, &params).unwrap();
            assert!(d(&s[0], &s[2]) <= d(&s[0], &s[1]) + d(&s[1], &s[2]) + 1e-9);
        }
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs_reference(b"", b"XYZ"), 0);
        assert_eq!(lcs_reference(b"ABAB", b"ABAB"), 4);
        assert_eq!(brute_force_lcs(b"ABCBDAB", b"BDCABA"), 4);
        assert_eq!(lcs_reference(b"ABCBDAB", b"BDCABA"), 4);
    }

    #[test]
    fn lcs_matches_subset_enumeration() {
        let mut rng = Rng::new(11);
        for _ in 0..200 {
            let s: Vec<u8> = (0..rng.below(12)).map(|_| b"ACGT"[rng.below(4)]).collect();
            let t: Vec<u8> = (0..rng.below(12)).map(|_| b"ACGT"[rng.below(4)]).collect();
            let l = lcs_reference(&s, &t);
            assert_eq!(l, brute_force_lcs(&s, &t));
            assert!(l <= s.len().min(t.len()));
        }
    }

    #[test]
    fn lcs_of_subsequence_is_its_length() {
        let t = b"GATTACAGATTACA";
        let s: Vec<u8> = t.iter().step_by(3).copied().collect();
        assert_eq!(lcs_reference(&s, t), s.len());
    }
}
