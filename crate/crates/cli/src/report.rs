//! The machine-readable run report printed with `--json`.

use serde::{Deserialize, Serialize};
use warpband::{BenchRecord, TwedParams};

/// One command invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub params: Option<TwedParams>,
    pub workers: Option<usize>,
    pub result: Payload,
    pub elapsed_ms: f64,
}

/// Command-specific result, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Distance {
        value: f64,
    },
    Matrix {
        path: String,
        rows: usize,
        cols: usize,
        symmetric: bool,
    },
    LcsLength {
        value: usize,
    },
    Bench {
        records: Vec<BenchRecord>,
    },
    Selftest {
        passed: bool,
        checks: Vec<Check>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
