use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use warpband::engine::Workers;
use warpband::{BenchConfig, TwedParams};
use warpband_cli::commands::{self, BatchArgs, CliError};
use warpband_cli::{Payload, RunReport};

#[derive(Debug, Parser)]
#[command(name = "warpband", version, about = "Time Warp Edit Distance and LCS in linear memory")]
struct Cli {
    /// Print a machine-readable JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Stiffness: cost per unit of timestamp difference.
    #[arg(long, default_value_t = 1.0)]
    nu: f64,

    /// Penalty added to every deletion.
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,

    /// lp-norm exponent between samples.
    #[arg(long, default_value_t = 2)]
    degree: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<TwedParams, CliError> {
        TwedParams::new(self.nu, self.lambda, self.degree).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
struct WorkerArgs {
    /// Worker threads, a positive integer or `auto`.
    #[arg(long, env = "WARPBAND_WORKERS", default_value = "auto", value_parser = parse_workers)]
    workers: Workers,
}

fn parse_workers(s: &str) -> Result<Workers, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Workers::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(Workers::Fixed(n)),
        _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
    }
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|part| match part.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!("`{part}` is not a positive integer")),
        })
        .collect()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance between two series CSV files.
    Twed {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// All-pairs distance matrix between two directories of series CSV files.
    Batch {
        dir_a: PathBuf,
        /// Second directory; omit together with --self.
        #[arg(required_unless_present = "self_pairs", conflicts_with = "self_pairs")]
        dir_b: Option<PathBuf>,
        /// Compare the first directory with itself.
        #[arg(long = "self")]
        self_pairs: bool,
        /// Compute only the upper triangle and mirror it (requires --self).
        #[arg(long)]
        symmetric: bool,
        /// Where to write the matrix CSV.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// Longest common subsequence length of the first lines of two text files.
    Lcs { a: PathBuf, b: PathBuf },
    /// Time the band solver against the quadratic reference on random pairs.
    Bench {
        /// Comma-separated series lengths.
        #[arg(long, default_value = "256,512,1024,2048,4096")]
        sizes: String,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest size the reference solver is run at.
        #[arg(long, default_value_t = 8192)]
        cutoff: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// Check the solvers against their reference implementations.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        workers: WorkerArgs,
    },
}

fn run(command: Command) -> Result<RunReport, CliError> {
    match command {
        Command::Twed { a, b, params, workers } => commands::cmd_twed(&a, &b, params.params()?, workers.workers),
        Command::Batch {
            dir_a,
            dir_b,
            self_pairs: _,
            symmetric,
            out,
            params,
            workers,
        } => commands::cmd_batch(&BatchArgs {
            dir_a: &dir_a,
            dir_b: dir_b.as_deref(),
            symmetric,
            out: &out,
            params: params.params()?,
            workers: workers.workers,
        }),
        Command::Lcs { a, b } => commands::cmd_lcs(&a, &b),
        Command::Bench {
            sizes,
            trials,
            seed,
            cutoff,
            params,
            workers,
        } => {
            let sizes = parse_sizes(&sizes).map_err(CliError::Usage)?;
            let config = BenchConfig {
                params: params.params()?,
                workers: workers.workers.count(),
                trials: trials.max(1),
                seed,
                reference_cutoff: cutoff,
            };
            commands::cmd_bench(&sizes, &config)
        }
        Command::Selftest { seed, workers } => commands::cmd_selftest(seed, workers.workers),
    }
}

fn print_plain(report: &RunReport) {
    match &report.result {
        Payload::Distance { value } => println!("{value}"),
        Payload::LcsLength { value } => println!("{value}"),
        Payload::Matrix { path, rows, cols, .. } => println!("wrote {rows}x{cols} distance matrix to {path}"),
        Payload::Bench { records } => print!("{}", commands::format_bench_table(records)),
        Payload::Selftest { passed, checks } => {
            for c in checks {
                println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            println!("{}", if *passed { "selftest passed" } else { "selftest FAILED" });
        }
    }
}

/// A report whose payload records a failed check.
fn failed(report: &RunReport) -> bool {
    match &report.result {
        Payload::Bench { records } => records.iter().any(|r| !r.parity),
        Payload::Selftest { passed, .. } => !passed,
        _ => false,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print_plain(&report);
            }
            if failed(&report) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("warpband: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
