//! Multi-threaded solving: one large pair split along its diagonals, or many
//! small pairs spread across workers.

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::band::{self, Schedule, TwedProblem};
use crate::error::{Error, Result};
use crate::series::{check_pair, local_costs, TimeSeries, TwedParams};

/// Series at least this long are split along each diagonal; shorter ones are
/// solved whole, one pair per worker.
pub const WITHIN_PAIR_MIN_LEN: usize = 512;

/// Smallest slice of a diagonal handed to one worker.
pub const MIN_CHUNK: usize = 256;

/// Worker count for the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    /// One worker per available hardware thread.
    #[default]
    Auto,
    Fixed(usize),
}

impl Workers {
    pub fn count(self) -> usize {
        match self {
            Workers::Auto => std::thread::available_parallelism().map_or(1, |n| n.get()),
            Workers::Fixed(n) => n.max(1),
        }
    }
}

impl From<usize> for Workers {
    fn from(n: usize) -> Self {
        Workers::Fixed(n)
    }
}

fn pool(workers: usize) -> Result<ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .thread_name(|i| format!("warpband-{i}"))
        .build()
        .map_err(|e| Error::State(format!("could not start {workers} worker threads: {e}")))
}

fn schedule_for(a: &TimeSeries, b: &TimeSeries, workers: usize) -> Schedule {
    if workers > 1 && a.len().max(b.len()) >= WITHIN_PAIR_MIN_LEN {
        Schedule::Parallel {
            workers,
            min_chunk: MIN_CHUNK,
        }
    } else {
        Schedule::Sequential
    }
}

/// Band solve of one pair inside an existing pool. Local costs of `a` and `b`
/// are computed concurrently.
fn solve_in_pool(a: &TimeSeries, b: &TimeSeries, params: &TwedParams, workers: usize) -> f64 {
    let (da, db) = rayon::join(|| local_costs(a, params.degree), || local_costs(b, params.degree));
    let problem = TwedProblem::with_costs(a, b, da, db, params);
    band::solve(&problem, schedule_for(a, b, workers))
}

/// TWED of one pair using up to `workers` threads.
///
/// The result is bit-identical to [`twed_band`](crate::twed_band) for every
/// worker count: each cell is computed by the same expression regardless of
/// which thread owns it.
pub fn twed_parallel(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &TwedParams,
    workers: impl Into<Workers>,
) -> Result<f64> {
    check_pair(a, b, params)?;
    let workers = workers.into().count();
    if workers == 1 {
        return band::twed_band(a, b, params);
    }
    Ok(pool(workers)?.install(|| solve_in_pool(a, b, params, workers)))
}

/// Dense matrix of pairwise distances, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    symmetric: bool,
}

impl DistanceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    /// Whether only the upper triangle was computed and mirrored.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.cols.max(1)).map(<[f64]>::to_vec).collect()
    }
}

/// The two sides of a batch.
#[derive(Debug, Clone, Copy)]
pub enum Pairing<'a> {
    /// Every series against every other series of the same list.
    SelfPairs(&'a [TimeSeries]),
    Cross(&'a [TimeSeries], &'a [TimeSeries]),
}

/// Batch configuration.
#[derive(Debug, Clone, Copy)]
pub struct BatchSpec<'a> {
    pub pairing: Pairing<'a>,
    pub params: TwedParams,
    /// Compute only `i <= j` and mirror. Self pairings only.
    pub symmetric: bool,
    pub workers: Workers,
}

impl<'a> BatchSpec<'a> {
    pub fn self_pairs(list: &'a [TimeSeries], params: TwedParams) -> Self {
        BatchSpec {
            pairing: Pairing::SelfPairs(list),
            params,
            symmetric: false,
            workers: Workers::Auto,
        }
    }

    pub fn cross(list_a: &'a [TimeSeries], list_b: &'a [TimeSeries], params: TwedParams) -> Self {
        BatchSpec {
            pairing: Pairing::Cross(list_a, list_b),
            params,
            symmetric: false,
            workers: Workers::Auto,
        }
    }

    pub fn symmetric(mut self, symmetric: bool) -> Self {
        self.symmetric = symmetric;
        self
    }

    pub fn workers(mut self, workers: impl Into<Workers>) -> Self {
        self.workers = workers.into();
        self
    }

    fn lists(&self) -> (&'a [TimeSeries], &'a [TimeSeries]) {
        match self.pairing {
            Pairing::SelfPairs(list) => (list, list),
            Pairing::Cross(a, b) => (a, b),
        }
    }

    /// Checks the spec and returns the common dimension.
    pub fn validate(&self) -> Result<usize> {
        self.params.validate()?;
        if self.symmetric && matches!(self.pairing, Pairing::Cross(..)) {
            return Err(Error::InvalidInput(
                "symmetric mode needs a single list compared with itself".into(),
            ));
        }
        let (a, b) = self.lists();
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidInput("batch lists must not be empty".into()));
        }
        let dim = a[0].dim();
        for (side, list) in [("A", a), ("B", b)] {
            if let Some(i) = list.iter().position(|s| s.dim() != dim) {
                return Err(Error::InvalidInput(format!(
                    "series {i} of list {side} has dimension {}, expected {dim}",
                    list[i].dim()
                )));
            }
        }
        Ok(dim)
    }
}

/// All-pairs TWED matrix.
///
/// ```
/// use warpband::{twed_batch, BatchSpec, TimeSeries, TwedParams};
/// let list = vec![
///     TimeSeries::from_scalars(&[0.0, 1.0, 2.0]).unwrap(),
///     TimeSeries::from_scalars(&[2.0, 1.0]).unwrap(),
/// ];
/// let m = twed_batch(&BatchSpec::self_pairs(&list, TwedParams::default()).symmetric(true)).unwrap();
/// assert_eq!(m.get(0, 0), 0.0);
/// assert_eq!(m.get(0, 1), m.get(1, 0));
/// ```
pub fn twed_batch(spec: &BatchSpec<'_>) -> Result<DistanceMatrix> {
    spec.validate()?;
    let workers = spec.workers.count();
    let (list_a, list_b) = spec.lists();
    let longest = list_a.iter().chain(list_b).map(TimeSeries::len).max().unwrap_or(0);
    let pool = pool(workers)?;
    pool.install(|| {
        if longest >= WITHIN_PAIR_MIN_LEN {
            twed_batch_with(spec, |a, b, p| solve_in_pool(a, b, p, workers))
        } else {
            twed_batch_with(spec, |a, b, p| {
                band::solve(&TwedProblem::with_costs(a, b, local_costs(a, p.degree), local_costs(b, p.degree), p), Schedule::Sequential)
            })
        }
    })
}

/// Fills a batch matrix with a caller-supplied pair solver, spreading pairs
/// across the current rayon pool. `solver` is invoked once per computed
/// entry: `rows × cols` times, or `N(N+1)/2` times in symmetric mode.
pub fn twed_batch_with<F>(spec: &BatchSpec<'_>, solver: F) -> Result<DistanceMatrix>
where
    F: Fn(&TimeSeries, &TimeSeries, &TwedParams) -> f64 + Sync,
{
    spec.validate()?;
    let (list_a, list_b) = spec.lists();
    let (rows, cols) = (list_a.len(), list_b.len());
    let params = &spec.params;
    let mut entries = vec![0.0; rows * cols];

    if spec.symmetric {
        // Each row i owns j >= i; the mirror is filled afterwards.
        entries.par_chunks_mut(cols).enumerate().for_each(|(i, row)| {
            for j in i..cols {
                row[j] = solver(&list_a[i], &list_b[j], params);
            }
        });
        for i in 0..rows {
            for j in 0..i {
                entries[i * cols + j] = entries[j * cols + i];
            }
        }
    } else {
        entries.par_iter_mut().enumerate().for_each(|(k, cell)| {
            *cell = solver(&list_a[k / cols], &list_b[k % cols], params);
        });
    }

    Ok(DistanceMatrix {
        rows,
        cols,
        entries,
        symmetric: spec.symmetric,
    })
}
