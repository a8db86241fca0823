//! Tables, pass/fail summaries and the files they are written to.

use serde::Serialize;
use std::fmt;
use std::io;
use std::path::Path;

/// One CSV cell. Floats print in shortest round-trip form; NaN marks "not applicable" and prints empty.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(bool),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(x) if x.is_nan() => Ok(()),
            Cell::Num(x) => write!(f, "{x:?}"),
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Flag(b) => write!(f, "{b}"),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::report::Cell::from($x)),*] };
}

/// A result table plus the verdict of the checks it records.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Description of every failed check.
    pub failures: Vec<String>,
    /// Largest amount by which a monotonicity or inequality check was missed.
    pub worst_violation: f64,
    /// Largest error against a reference value.
    pub max_error: f64,
}

impl Outcome {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new(), failures: Vec::new(), worst_violation: 0.0, max_error: 0.0 }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Record `error` and fail unless it is within `tol`.
    pub fn error(&mut self, what: impl Into<String>, error: f64, tol: f64) -> bool {
        self.max_error = max_nan(self.max_error, error);
        self.require(error <= tol, || format!("{}: error {error:e} exceeds {tol:e}", what.into()))
    }

    /// Record a violation amount (0 when the check holds).
    pub fn violation(&mut self, what: impl Into<String>, amount: f64) -> bool {
        self.worst_violation = max_nan(self.worst_violation, amount);
        self.require(amount <= 0.0, || format!("{}: violated by {amount:e}", what.into()))
    }

    pub fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) -> bool {
        if !ok {
            self.failures.push(msg());
        }
        ok
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn write_csv(&self, path: &Path) -> io::Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|c| c.to_string()))?;
        }
        w.flush()
    }
}

fn max_nan(a: f64, b: f64) -> f64 {
    if b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// What was run, with which parameters and which files came out. Everything
/// here is a function of the command line, so identical manifests give
/// identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: serde_json::Value,
    pub seed: u64,
    pub outputs: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Summary<'a> {
    pub status: &'static str,
    pub worst_violation: f64,
    pub max_error: f64,
    pub failures: &'a [String],
    pub manifest: &'a RunManifest,
}

/// Timing and thread count; kept apart from the summary since they vary
/// between otherwise identical runs.
#[derive(Debug, Serialize)]
pub struct RunInfo<'a> {
    #[serde(flatten)]
    pub manifest: &'a RunManifest,
    pub wall_time: f64,
    pub threads: usize,
}
