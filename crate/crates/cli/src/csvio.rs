//! Series and matrix CSV files.
//!
//! A series file has a header `t,v0,v1,…,v{d-1}` and one row per sample.
//! A matrix file has a header `series,<col names…>` and one row per series of
//! the left list, values written as shortest round-trip decimals.

use std::fmt;
use std::path::Path;

use warpband::{DistanceMatrix, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesErrorKind {
    /// Malformed file: header, ragged rows, unparsable numbers.
    Format,
    /// Well-formed file whose content breaks a series invariant.
    Validation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesError {
    pub kind: SeriesErrorKind,
    /// 1-based data row (the header is row 0).
    pub row: Option<usize>,
    pub message: String,
}

impl SeriesError {
    fn format(row: Option<usize>, message: impl Into<String>) -> Self {
        SeriesError {
            kind: SeriesErrorKind::Format,
            row,
            message: message.into(),
        }
    }

    fn validation(row: Option<usize>, message: impl Into<String>) -> Self {
        SeriesError {
            kind: SeriesErrorKind::Validation,
            row,
            message: message.into(),
        }
    }
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SeriesErrorKind::Format => "format error",
            SeriesErrorKind::Validation => "validation error",
        };
        match self.row {
            Some(row) => write!(f, "{kind} at row {row}: {}", self.message),
            None => write!(f, "{kind}: {}", self.message),
        }
    }
}

impl std::error::Error for SeriesError {}

fn check_header(header: &csv::StringRecord) -> Result<usize, SeriesError> {
    let fields: Vec<&str> = header.iter().collect();
    if fields.first() != Some(&"t") {
        return Err(SeriesError::format(
            None,
            format!("missing header: expected first line `t,v0,...`, found `{}`", fields.join(",")),
        ));
    }
    let dim = fields.len() - 1;
    if dim == 0 {
        return Err(SeriesError::format(None, "header has no value columns"));
    }
    for (i, name) in fields[1..].iter().enumerate() {
        if *name != format!("v{i}") {
            return Err(SeriesError::format(
                None,
                format!("header column {} is `{name}`, expected `v{i}`", i + 1),
            ));
        }
    }
    Ok(dim)
}

/// Parses a series CSV document.
pub fn parse_series_csv(text: &str) -> Result<TimeSeries, SeriesError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| SeriesError::format(None, e.to_string()))?
        .clone();
    if header.is_empty() {
        return Err(SeriesError::format(None, "missing header: empty document"));
    }
    let dim = check_header(&header)?;

    let mut times = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| SeriesError::format(Some(row), e.to_string()))?;
        if record.len() != dim + 1 {
            return Err(SeriesError::format(
                Some(row),
                format!("expected {} columns, found {}", dim + 1, record.len()),
            ));
        }
        let mut parsed = record.iter().enumerate().map(|(col, field)| {
            field.parse::<f64>().map_err(|_| {
                SeriesError::format(Some(row), format!("column {} is not a number: `{field}`", header[col].to_owned()))
            })
        });
        let t = parsed.next().expect("at least one column")?;
        if let Some(&previous) = times.last() {
            if t <= previous {
                return Err(SeriesError::validation(
                    Some(row),
                    format!("timestamp {t} does not increase (previous {previous})"),
                ));
            }
        }
        times.push(t);
        for v in parsed {
            values.push(v?);
        }
    }
    if times.is_empty() {
        return Err(SeriesError::validation(None, "series has no samples"));
    }
    TimeSeries::from_flat(&values, &times, dim).map_err(|e| SeriesError::validation(None, e.to_string()))
}

/// Writes a series in the format [`parse_series_csv`] reads.
pub fn write_series_csv(series: &TimeSeries) -> String {
    let mut out = String::from("t");
    for i in 0..series.dim() {
        out.push_str(&format!(",v{i}"));
    }
    out.push('\n');
    for (k, t) in series.times().iter().enumerate() {
        out.push_str(&t.to_string());
        for v in series.sample(k) {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// Writes a distance matrix with row and column labels.
pub fn write_matrix_csv(
    path: &Path,
    matrix: &DistanceMatrix,
    row_names: &[String],
    col_names: &[String],
) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    let mut header = vec!["series".to_owned()];
    header.extend(col_names.iter().cloned());
    writer.write_record(&header)?;
    for (i, name) in row_names.iter().enumerate() {
        let mut record = vec![name.clone()];
        record.extend(matrix.row(i).iter().map(f64::to_string));
        writer.write_record(&record)?;
    }
    writer.flush()
}
