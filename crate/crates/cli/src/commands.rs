//! Subcommand implementations. Each returns a [`RunReport`]; printing and
//! exit codes are left to `main`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;
use warpband::engine::Workers;
use warpband::synth::{random_series_irregular, Rng};
use warpband::{
    bench, lcs_band, lcs_reference, twed_band, twed_batch, twed_parallel, twed_reference, BatchSpec, BenchConfig,
    BenchRecord, TimeSeries, TwedParams,
};

use crate::csvio::{parse_series_csv, write_matrix_csv, SeriesError};
use crate::report::{Check, Payload, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Series { path: PathBuf, source: SeriesError },

    #[error("{0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Solver(#[from] warpband::Error),

    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 0 success, 1 internal or environment failure, 2 usage or invalid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Series { .. } | CliError::Invalid(_) => 2,
            CliError::Solver(warpband::Error::State(_)) => 1,
            CliError::Solver(_) => 2,
            CliError::Io { .. } | CliError::Internal(_) => 1,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

pub fn read_series(path: &Path) -> Result<TimeSeries, CliError> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    parse_series_csv(&text).map_err(|source| CliError::Series {
        path: path.to_owned(),
        source,
    })
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

pub fn cmd_twed(a: &Path, b: &Path, params: TwedParams, workers: Workers) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let series_a = read_series(a)?;
    let series_b = read_series(b)?;
    if series_a.dim() != series_b.dim() {
        return Err(CliError::Invalid(format!(
            "dimension mismatch: {} has d={}, {} has d={}",
            a.display(),
            series_a.dim(),
            b.display(),
            series_b.dim()
        )));
    }
    let value = twed_parallel(&series_a, &series_b, &params, workers)?;
    Ok(RunReport {
        command: "twed".into(),
        inputs: vec![display(a), display(b)],
        params: Some(params),
        workers: Some(workers.count()),
        result: Payload::Distance { value },
        elapsed_ms: elapsed_ms(start),
    })
}

/// `*.csv` files of a directory, sorted by file name, parsed.
pub fn read_series_dir(dir: &Path) -> Result<(Vec<String>, Vec<TimeSeries>), CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_error(dir))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_error(dir))?;
    paths.retain(|p| p.is_file() && p.extension().is_some_and(|e| e == "csv"));
    paths.sort_by(|x, y| x.file_name().cmp(&y.file_name()));
    if paths.is_empty() {
        return Err(CliError::Invalid(format!("{}: no .csv series files", dir.display())));
    }

    let mut names = Vec::with_capacity(paths.len());
    let mut series = Vec::with_capacity(paths.len());
    for path in &paths {
        let s = read_series(path)?;
        if let Some(first) = series.first().map(TimeSeries::dim) {
            if s.dim() != first {
                return Err(CliError::Invalid(format!(
                    "{}: dimension {} differs from {} (dimension {first})",
                    path.display(),
                    s.dim(),
                    paths[0].display()
                )));
            }
        }
        names.push(path.file_name().expect("file has a name").to_string_lossy().into_owned());
        series.push(s);
    }
    Ok((names, series))
}

pub struct BatchArgs<'a> {
    pub dir_a: &'a Path,
    /// `None` compares `dir_a` with itself.
    pub dir_b: Option<&'a Path>,
    pub symmetric: bool,
    pub out: &'a Path,
    pub params: TwedParams,
    pub workers: Workers,
}

pub fn cmd_batch(args: &BatchArgs<'_>) -> Result<RunReport, CliError> {
    let start = Instant::now();
    if args.symmetric && args.dir_b.is_some() {
        return Err(CliError::Usage("--symmetric requires --self".into()));
    }
    let (names_a, list_a) = read_series_dir(args.dir_a)?;
    let other = args.dir_b.map(read_series_dir).transpose()?;
    let (spec, names_b, inputs) = match &other {
        None => (
            BatchSpec::self_pairs(&list_a, args.params),
            names_a.clone(),
            vec![display(args.dir_a)],
        ),
        Some((names_b, list_b)) => {
            if list_b[0].dim() != list_a[0].dim() {
                return Err(CliError::Invalid(format!(
                    "{} holds series of dimension {} but {} holds dimension {}",
                    args.dir_a.display(),
                    list_a[0].dim(),
                    args.dir_b.expect("second directory").display(),
                    list_b[0].dim()
                )));
            }
            (
                BatchSpec::cross(&list_a, list_b, args.params),
                names_b.clone(),
                vec![display(args.dir_a), display(args.dir_b.expect("second directory"))],
            )
        }
    };
    let spec = spec.symmetric(args.symmetric).workers(args.workers);
    let matrix = twed_batch(&spec)?;
    write_matrix_csv(args.out, &matrix, &names_a, &names_b).map_err(io_error(args.out))?;

    Ok(RunReport {
        command: "batch".into(),
        inputs,
        params: Some(args.params),
        workers: Some(args.workers.count()),
        result: Payload::Matrix {
            path: display(args.out),
            rows: matrix.rows(),
            cols: matrix.cols(),
            symmetric: matrix.is_symmetric(),
        },
        elapsed_ms: elapsed_ms(start),
    })
}

fn first_line(path: &Path) -> Result<Vec<char>, CliError> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    Ok(text.lines().next().unwrap_or("").chars().collect())
}

pub fn cmd_lcs(a: &Path, b: &Path) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let s = first_line(a)?;
    let t = first_line(b)?;
    Ok(RunReport {
        command: "lcs".into(),
        inputs: vec![display(a), display(b)],
        params: None,
        workers: None,
        result: Payload::LcsLength { value: lcs_band(&s, &t) },
        elapsed_ms: elapsed_ms(start),
    })
}

pub fn cmd_bench(sizes: &[usize], config: &BenchConfig) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let records = bench(sizes, config)?;
    Ok(RunReport {
        command: "bench".into(),
        inputs: sizes.iter().map(usize::to_string).collect(),
        params: Some(config.params),
        workers: Some(config.workers),
        result: Payload::Bench { records },
        elapsed_ms: elapsed_ms(start),
    })
}

/// Aligned text table: size, band seconds, reference seconds, speedup,
/// parity. Reference and speedup are blank when the reference was skipped.
pub fn format_bench_table(records: &[BenchRecord]) -> String {
    let mut rows = vec![[
        "N".to_owned(),
        "band (s)".to_owned(),
        "reference (s)".to_owned(),
        "speedup".to_owned(),
        "parity".to_owned(),
    ]];
    for r in records {
        rows.push([
            r.size.to_string(),
            format!("{:.6}", r.band_seconds),
            r.reference_seconds.map(|t| format!("{t:.6}")).unwrap_or_default(),
            r.speedup.map(|s| format!("{s:.2}")).unwrap_or_default(),
            if r.parity { "ok" } else { "MISMATCH" }.to_owned(),
        ]);
    }
    let mut widths = [0usize; 5];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row.iter().zip(widths).map(|(cell, w)| format!("{cell:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Quick end-to-end check of the solvers against their oracles.
pub fn cmd_selftest(seed: u64, workers: Workers) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut rng = Rng::new(seed);
    let mut checks = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let dim = rng.between(1, 4);
        let (n, m) = (rng.between(2, 64), rng.between(2, 64));
        let a = random_series_irregular(&mut rng, n, dim);
        let b = random_series_irregular(&mut rng, m, dim);
        let params = TwedParams::new(*rng.pick(&[0.1, 1.0]), *rng.pick(&[0.0, 0.5, 1.0]), rng.between(1, 2) as u32)?;
        let band = twed_band(&a, &b, &params)?;
        let reference = twed_reference(&a, &b, &params)?;
        worst = worst.max((band - reference).abs() / reference.abs().max(f64::MIN_POSITIVE));
    }
    checks.push(Check {
        name: "band vs reference".into(),
        passed: worst <= 1e-12,
        detail: format!("200 random pairs, worst relative difference {worst:e}"),
    });

    let mut mismatches = 0;
    for _ in 0..5 {
        let (n, m) = (rng.between(512, 1024), rng.between(512, 1024));
        let a = random_series_irregular(&mut rng, n, 1);
        let b = random_series_irregular(&mut rng, m, 1);
        let params = TwedParams::default();
        let one = twed_band(&a, &b, &params)?;
        let many = twed_parallel(&a, &b, &params, workers)?;
        mismatches += (one.to_bits() != many.to_bits()) as usize;
    }
    checks.push(Check {
        name: "parallel determinism".into(),
        passed: mismatches == 0,
        detail: format!("5 pairs, {} workers vs 1: {mismatches} mismatches", workers.count()),
    });

    let textbook = lcs_band(b"ABCBDAB", b"BDCABA");
    let mut lcs_mismatches = 0;
    for _ in 0..100 {
        let (n, m) = (rng.between(0, 64), rng.between(0, 64));
        let s = warpband::synth::random_symbols(&mut rng, n, b"ACGT");
        let t = warpband::synth::random_symbols(&mut rng, m, b"ACGT");
        lcs_mismatches += (lcs_band(&s, &t) != lcs_reference(&s, &t)) as usize;
    }
    checks.push(Check {
        name: "lcs band vs reference".into(),
        passed: textbook == 4 && lcs_mismatches == 0,
        detail: format!("(ABCBDAB, BDCABA) -> {textbook}; 100 random pairs: {lcs_mismatches} mismatches"),
    });

    Ok(RunReport {
        command: "selftest".into(),
        inputs: vec![],
        params: None,
        workers: Some(workers.count()),
        result: Payload::Selftest {
            passed: checks.iter().all(|c| c.passed),
            checks,
        },
        elapsed_ms: elapsed_ms(start),
    })
}
