//! Subcommand implementations. Each builds an [`Outcome`]: a table plus the
//! verdicts of the checks behind it.

pub mod carleman;
pub mod frequency;
pub mod harmonic_map;
pub mod lift_demo;
pub mod mcf;
pub mod two_phase;
pub mod weights;

use crate::grid::{parse_grid, parse_list, Spacing};
use crate::report::Outcome;
use dimlift::functionals::{is_decreasing_with_floor, MonotonicityReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] dimlift::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn grid(s: &str, spacing: Spacing) -> CliResult<Vec<f64>> {
    parse_grid(s, spacing).map_err(CliError::Usage)
}

pub(crate) fn list<T: std::str::FromStr>(s: &str) -> CliResult<Vec<T>> {
    parse_list(s).map_err(CliError::Usage)
}

/// Relative monotonicity tolerance used by every sweep.
pub(crate) const SWEEP_TOL: f64 = 1e-8;

/// Errors at or below this count as converged in convergence tables.
pub(crate) const ERROR_FLOOR: f64 = 1e-12;

pub(crate) fn record_sweep(out: &mut Outcome, label: &str, rep: &MonotonicityReport) {
    out.violation(format!("{label}: {} monotonicity violations", rep.violations), rep.worst_violation);
}

/// Fail unless `errors` decreases strictly (entries at rounding level excepted).
pub(crate) fn record_decreasing(out: &mut Outcome, label: &str, errors: &[f64]) {
    let worst = errors.windows(2).map(|w| if w[1] <= ERROR_FLOOR { 0.0 } else { w[1] - w[0] }).fold(0.0, f64::max);
    let ok = is_decreasing_with_floor(errors, ERROR_FLOOR);
    out.worst_violation = out.worst_violation.max(worst);
    out.require(ok, || format!("{label}: errors {errors:?} are not strictly decreasing"));
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}
