//! Linear-memory solvers that sweep the DP matrix one anti-diagonal at a time.
//!
//! Every cell `(row, col)` of the TWED (or LCS) matrix depends only on
//! `(row-1, col)`, `(row, col-1)` and `(row-1, col-1)`. Grouping cells by
//! `row + col` therefore gives diagonals whose cells depend only on the two
//! previous diagonals and not on each other. The solver keeps exactly three
//! diagonal buffers, rotating them after each step:
//!
//! ```text
//!          col 0   1   2   3
//!  row 0     0   1   2   3        cell label = diagonal (row + col)
//!      1     1   2   3   4
//!      2     2   3   4   5
//! ```
//!
//! Within a buffer a cell is addressed by its column, so the diagonal `d`
//! occupies indices `max(0, d - nA) ..= min(d, nB)`. A buffer of length
//! `(nA + 1) + (nB + 1)` holds any diagonal. The three neighbours of cell
//! `idx` sit at `lag1[idx]`, `lag1[idx - 1]` and `lag2[idx - 1]`: the offsets
//! are the same for every cell of a diagonal, so reads walk the buffers with
//! unit stride.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::{check_pair, local_costs, lp_distance, LocalCosts, TimeSeries, TwedParams};

/// Position of a matrix cell in diagonal coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagonalCoord {
    /// Which anti-diagonal, `row + col`.
    pub orthodiag: usize,
    /// Position inside the diagonal buffer, `col`.
    pub idx: usize,
}

/// Maps `(row, col)` to its diagonal coordinate `(row + col, col)`.
///
/// ```
/// use warpband::band::{ortho_diag, DiagonalCoord};
/// assert_eq!(ortho_diag(1, 2).unwrap(), DiagonalCoord { orthodiag: 3, idx: 2 });
/// assert!(ortho_diag(-1, 0).is_err());
/// ```
pub fn ortho_diag(row: isize, col: isize) -> Result<DiagonalCoord> {
    if row < 0 || col < 0 {
        return Err(Error::InvalidInput(format!(
            "matrix coordinates must be non-negative, got ({row}, {col})"
        )));
    }
    Ok(DiagonalCoord {
        orthodiag: (row + col) as usize,
        idx: col as usize,
    })
}

/// Inverse of [`ortho_diag`]: `(orthodiag - idx, idx)`.
pub fn row_col(coord: DiagonalCoord) -> Result<(usize, usize)> {
    if coord.idx > coord.orthodiag {
        return Err(Error::InvalidInput(format!(
            "idx {} lies outside diagonal {}",
            coord.idx, coord.orthodiag
        )));
    }
    Ok((coord.orthodiag - coord.idx, coord.idx))
}

/// Number of diagonals covering an `(nA + 1) × (nB + 1)` matrix.
pub fn diagonal_count(n_a: usize, n_b: usize) -> usize {
    n_a + n_b + 1
}

/// Buffer indices occupied by diagonal `d` of an `(n_a + 1) × (n_b + 1)` matrix.
pub fn diagonal_span(d: usize, n_a: usize, n_b: usize) -> RangeInclusive<usize> {
    d.saturating_sub(n_a)..=d.min(n_b)
}

/// The three rotating diagonal buffers.
///
/// `current` receives diagonal `d`, `lag1` holds `d - 1` and `lag2` holds
/// `d - 2`. After construction `current` holds diagonal 0.
#[derive(Debug, Clone)]
pub struct DiagonalBand<T> {
    z: Vec<T>,
    lag1: Vec<T>,
    lag2: Vec<T>,
    n_a: usize,
    n_b: usize,
    // last diagonal written into a buffer
    front: usize,
    // rotations since `front` was written
    rotations: usize,
}

impl<T: Copy> DiagonalBand<T> {
    /// Allocates the three buffers of length `n_a + n_b + 2`, filled with
    /// `fill`, and writes `origin` as cell (0, 0).
    pub fn new(n_a: usize, n_b: usize, fill: T, origin: T) -> Self {
        let len = n_a + n_b + 2;
        let mut z = vec![fill; len];
        z[0] = origin;
        DiagonalBand {
            z,
            lag1: vec![fill; len],
            lag2: vec![fill; len],
            n_a,
            n_b,
            front: 0,
            rotations: 0,
        }
    }
}

impl<T> DiagonalBand<T> {
    pub fn buffer_len(&self) -> usize {
        self.z.len()
    }

    pub fn current(&self) -> &[T] {
        &self.z
    }

    pub fn lag1(&self) -> &[T] {
        &self.lag1
    }

    pub fn lag2(&self) -> &[T] {
        &self.lag2
    }

    /// The last diagonal that was written.
    pub fn front(&self) -> usize {
        self.front
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_a, self.n_b)
    }

    /// Rotates roles: `current → lag1 → lag2 → current`. The old `lag2`
    /// buffer is recycled as the next `current`; nothing is allocated.
    pub fn cycle(&mut self) {
        std::mem::swap(&mut self.lag2, &mut self.lag1);
        std::mem::swap(&mut self.lag1, &mut self.z);
        self.rotations += 1;
    }

    /// Checks that `d` can be written now and returns the writable buffer
    /// together with the two lagged diagonals.
    fn begin_step(&mut self, d: usize) -> Result<(&mut [T], &[T], &[T])> {
        if d == 0 {
            return Err(Error::State("diagonal 0 is the origin and is set on construction".into()));
        }
        if d > self.n_a + self.n_b {
            return Err(Error::State(format!(
                "diagonal {d} is past the last diagonal {}",
                self.n_a + self.n_b
            )));
        }
        if d != self.front + 1 || self.rotations != 1 {
            return Err(Error::State(format!(
                "diagonal {d} requested but the band holds diagonal {} rotated {} time(s); \
                 expected diagonal {} rotated once",
                self.front,
                self.rotations,
                d.saturating_sub(1)
            )));
        }
        self.front = d;
        self.rotations = 0;
        Ok((&mut self.z, &self.lag1, &self.lag2))
    }
}

/// Rotates the band buffers; see [`DiagonalBand::cycle`].
pub fn cycle_buffers<T>(band: &mut DiagonalBand<T>) {
    band.cycle();
}

/// How the cells of one diagonal are distributed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// All cells on the calling thread.
    Sequential,
    /// Split across the current rayon pool in about `workers` chunks of at
    /// least `min_chunk` cells.
    Parallel { workers: usize, min_chunk: usize },
}

impl Schedule {
    fn chunk_len(self, cells: usize) -> Option<usize> {
        match self {
            Schedule::Sequential => None,
            Schedule::Parallel { workers, min_chunk } => {
                let workers = workers.max(1);
                if workers == 1 || cells < 2 * min_chunk.max(1) {
                    return None;
                }
                Some(cells.div_ceil(workers).max(min_chunk))
            }
        }
    }
}

/// A TWED pair prepared for band solving: inputs, their local deletion
/// costs and parameters.
#[derive(Debug, Clone)]
pub struct TwedProblem<'a> {
    a: &'a TimeSeries,
    b: &'a TimeSeries,
    da: LocalCosts,
    db: LocalCosts,
    params: TwedParams,
}

impl<'a> TwedProblem<'a> {
    pub fn new(a: &'a TimeSeries, b: &'a TimeSeries, params: &TwedParams) -> Result<Self> {
        check_pair(a, b, params)?;
        Ok(Self::with_costs(
            a,
            b,
            local_costs(a, params.degree),
            local_costs(b, params.degree),
            params,
        ))
    }

    /// Uses local costs computed elsewhere (e.g. concurrently).
    pub(crate) fn with_costs(
        a: &'a TimeSeries,
        b: &'a TimeSeries,
        da: LocalCosts,
        db: LocalCosts,
        params: &TwedParams,
    ) -> Self {
        TwedProblem {
            a,
            b,
            da,
            db,
            params: *params,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.a.len(), self.b.len())
    }

    /// A fresh band positioned at diagonal 0.
    pub fn band(&self) -> DiagonalBand<f64> {
        DiagonalBand::new(self.a.len(), self.b.len(), f64::INFINITY, 0.0)
    }

    /// Fills cells `first ..= first + out.len() - 1` of diagonal `d`. Every
    /// cell must be interior (row ≥ 1, col ≥ 1).
    fn fill_interior(&self, d: usize, first: usize, out: &mut [f64], lag1: &[f64], lag2: &[f64]) {
        let TwedParams { nu, lambda, degree } = self.params;
        let (a, b) = (self.a, self.b);
        let (da, db) = (self.da.as_slice(), self.db.as_slice());
        let (ta, tb) = (a.padded_times(), b.padded_times());
        let lag1 = &lag1[first - 1..first + out.len()];
        let lag2 = &lag2[first - 1..first - 1 + out.len()];

        if a.dim() == 1 {
            // Exact-length windows over both series so the loop runs without
            // bounds checks. Rows run backwards as columns run forwards.
            let n = out.len();
            let row_hi = d - first;
            let row_lo = row_hi + 1 - n;
            let va = &a.padded_values()[row_lo - 1..=row_hi];
            let ta = &ta[row_lo - 1..=row_hi];
            let da = &da[row_lo - 1..row_hi];
            let vb = &b.padded_values()[first - 1..first + n];
            let tb = &tb[first - 1..first + n];
            let db = &db[first - 1..first - 1 + n];
            let lag1 = &lag1[..n + 1];
            let lag2 = &lag2[..n];
            for (k, cell) in out.iter_mut().enumerate() {
                let (r, c) = (n - k, k + 1);
                let delete_a = lag1[c] + da[r - 1] + nu * (ta[r] - ta[r - 1]).abs() + lambda;
                let delete_b = lag1[k] + db[k] + nu * (tb[c] - tb[k]).abs() + lambda;
                let matched = lag2[k]
                    + (va[r] - vb[c]).abs()
                    + (va[r - 1] - vb[k]).abs()
                    + nu * ((ta[r] - tb[c]).abs() + (ta[r - 1] - tb[k]).abs());
                *cell = delete_a.min(delete_b).min(matched);
            }
        } else {
            for (k, cell) in out.iter_mut().enumerate() {
                let col = first + k;
                let row = d - col;
                let delete_a = lag1[k + 1] + da[row - 1] + nu * (ta[row] - ta[row - 1]).abs() + lambda;
                let delete_b = lag1[k] + db[col - 1] + nu * (tb[col] - tb[col - 1]).abs() + lambda;
                let matched = lag2[k]
                    + lp_distance(a.point(row), b.point(col), degree)
                    + lp_distance(a.point(row - 1), b.point(col - 1), degree)
                    + nu * ((ta[row] - tb[col]).abs() + (ta[row - 1] - tb[col - 1]).abs());
                *cell = delete_a.min(delete_b).min(matched);
            }
        }
    }
}

/// Computes diagonal `d` into `band.current()` from the two lagged diagonals.
///
/// The band must hold diagonal `d - 1` and have been cycled exactly once
/// since. Returns the buffer indices written; each is written exactly once.
pub fn band_step(
    d: usize,
    band: &mut DiagonalBand<f64>,
    problem: &TwedProblem<'_>,
    schedule: Schedule,
) -> Result<RangeInclusive<usize>> {
    let (n_a, n_b) = problem.shape();
    if band.shape() != (n_a, n_b) {
        return Err(Error::State(format!(
            "band shaped for {:?} used with a {:?} problem",
            band.shape(),
            (n_a, n_b)
        )));
    }
    let span = diagonal_span(d, n_a, n_b);
    let (z, lag1, lag2) = band.begin_step(d)?;
    let (lo, hi) = (*span.start(), *span.end());

    // Column 0 and row 0 are boundary cells, +inf away from the origin.
    let first = lo.max(1);
    let last = if d <= n_b { hi - 1 } else { hi };
    if lo == 0 {
        z[0] = f64::INFINITY;
    }
    if d <= n_b {
        z[d] = f64::INFINITY;
    }
    if first <= last {
        let out = &mut z[first..=last];
        match schedule.chunk_len(out.len()) {
            None => problem.fill_interior(d, first, out, lag1, lag2),
            Some(chunk) => out.par_chunks_mut(chunk).enumerate().for_each(|(c, part)| {
                problem.fill_interior(d, first + c * chunk, part, lag1, lag2)
            }),
        }
    }
    Ok(span)
}

/// Runs every diagonal of `problem` and returns the final cost.
pub fn solve(problem: &TwedProblem<'_>, schedule: Schedule) -> f64 {
    solve_observed(problem, schedule, |_, _, _| {})
}

/// Like [`solve`], calling `observe(d, span, current)` after each diagonal
/// step with the indices written and the buffer holding them.
pub fn solve_observed<F>(problem: &TwedProblem<'_>, schedule: Schedule, mut observe: F) -> f64
where
    F: FnMut(usize, RangeInclusive<usize>, &[f64]),
{
    let (n_a, n_b) = problem.shape();
    let mut band = problem.band();
    for d in 1..diagonal_count(n_a, n_b) {
        band.cycle();
        let span = band_step(d, &mut band, problem, schedule).expect("diagonals are visited in order");
        observe(d, span, band.current());
    }
    band.current()[n_b]
}

/// TWED in linear memory, one diagonal at a time on the calling thread.
///
/// ```
/// use warpband::{twed_band, twed_reference, TimeSeries, TwedParams};
/// let a = TimeSeries::from_scalars(&[0.0, 1.0, 2.5, 1.0]).unwrap();
/// let b = TimeSeries::from_scalars(&[0.5, 2.0, 1.0]).unwrap();
/// let params = TwedParams::default();
/// assert_eq!(
///     twed_band(&a, &b, &params).unwrap(),
///     twed_reference(&a, &b, &params).unwrap(),
/// );
/// ```
pub fn twed_band(a: &TimeSeries, b: &TimeSeries, params: &TwedParams) -> Result<f64> {
    let problem = TwedProblem::new(a, b, params)?;
    Ok(solve(&problem, Schedule::Sequential))
}

/// Computes LCS diagonal `d` into `band.current()`.
pub fn lcs_step<T: PartialEq>(d: usize, band: &mut DiagonalBand<usize>, s: &[T], t: &[T]) -> Result<RangeInclusive<usize>> {
    if band.shape() != (s.len(), t.len()) {
        return Err(Error::State(format!(
            "band shaped for {:?} used with sequences of length {:?}",
            band.shape(),
            (s.len(), t.len())
        )));
    }
    let span = diagonal_span(d, s.len(), t.len());
    let (z, lag1, lag2) = band.begin_step(d)?;
    for col in span.clone() {
        let row = d - col;
        z[col] = if row == 0 || col == 0 {
            0
        } else if s[row - 1] == t[col - 1] {
            lag2[col - 1] + 1
        } else {
            lag1[col].max(lag1[col - 1])
        };
    }
    Ok(span)
}

/// Longest common subsequence length in linear memory.
///
/// ```
/// assert_eq!(warpband::lcs_band(b"ABCBDAB", b"BDCABA"), 4);
/// ```
pub fn lcs_band<T: PartialEq>(s: &[T], t: &[T]) -> usize {
    let mut band = DiagonalBand::new(s.len(), t.len(), 0usize, 0);
    for d in 1..diagonal_count(s.len(), t.len()) {
        band.cycle();
        lcs_step(d, &mut band, s, t).expect("diagonals are visited in order");
    }
    band.current()[t.len()]
}
