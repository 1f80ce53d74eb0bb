//! Library half of the `warpband` command-line tool: file formats, the JSON
//! run report and the subcommands.

pub mod commands;
pub mod csvio;
pub mod report;

pub use commands::CliError;
pub use csvio::{parse_series_csv, write_series_csv, SeriesError, SeriesErrorKind};
pub use report::{Payload, RunReport};
