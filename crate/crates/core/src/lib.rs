//! Time Warp Edit Distance (TWED) for time series, solved two ways.
//!
//! * [`twed_reference`] fills the whole `(nA + 1) × (nB + 1)` cost matrix. It
//!   is quadratic in memory and exists as the baseline.
//! * [`twed_band`] sweeps the same matrix one anti-diagonal at a time with
//!   three rotating buffers, so memory is linear, and every cell on a diagonal
//!   can be computed independently. [`twed_parallel`] splits those diagonals
//!   across threads.
//!
//! The same diagonal band solves longest common subsequence lengths
//! ([`lcs_band`]), and [`twed_batch`] builds all-pairs distance matrices.
//!
//! ```
//! use warpband::{twed_band, twed_parallel, TimeSeries, TwedParams};
//!
//! let a = TimeSeries::new(vec![vec![0.0], vec![1.0], vec![0.5]], vec![0.0, 1.0, 2.0]).unwrap();
//! let b = TimeSeries::new(vec![vec![0.2], vec![0.9]], vec![0.0, 1.5]).unwrap();
//! let params = TwedParams::new(1.0, 0.0, 2).unwrap();
//!
//! let d = twed_band(&a, &b, &params).unwrap();
//! assert_eq!(d, twed_parallel(&a, &b, &params, 4).unwrap());
//! ```
//!
//! The guide under `book/` walks through the recurrence, the diagonal
//! indexing and the batch engine in more detail.

pub mod band;
pub mod bench;
pub mod engine;
mod error;
pub mod flat;
pub mod reference;
pub mod series;
pub mod synth;

pub use band::{lcs_band, twed_band, DiagonalBand, DiagonalCoord};
pub use bench::{bench, BenchConfig, BenchRecord};
pub use engine::{twed_batch, twed_parallel, BatchSpec, DistanceMatrix, Workers};
pub use error::{Error, Result};
pub use reference::{lcs_reference, twed_reference, twed_reference_matrix, CostMatrix};
pub use series::{local_costs, lp_norm, LocalCosts, TimeSeries, TwedParams};

// Compiles and runs the code blocks of the guide as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/recurrence.md")]
    struct Recurrence;
    #[doc = include_str!("../../../book/src/diagonals.md")]
    struct Diagonals;
    #[doc = include_str!("../../../book/src/band.md")]
    struct Band;
    #[doc = include_str!("../../../book/src/lcs.md")]
    struct Lcs;
    #[doc = include_str!("../../../book/src/batch.md")]
    struct Batch;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
}
