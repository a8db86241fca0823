use crate::error::{domain, Error, Result};
use rayon::prelude::*;

/// How a decrease is measured against `tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Violation when the slope is below `-tol`.
    Absolute(f64),
    /// Violation when `v_{k+1} - v_k < -tol·max(|v_k|, |v_{k+1}|)`.
    Relative(f64),
}

/// Forward-difference scan of a curve for decreases.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub slopes: Vec<f64>,
    pub violations: usize,
    /// Largest decrease, in the units of the tolerance; 0 when none.
    pub worst_violation: f64,
}

impl MonotonicityReport {
    pub fn is_monotone(&self) -> bool {
        self.violations == 0
    }
}

/// Evaluate `curve` on a strictly increasing grid of at least 8 points and
/// count forward-difference slopes that fall below the tolerance.
/// Grid points are evaluated in parallel; the report is in grid order.
pub fn monotonicity_sweep(
    curve: impl Fn(f64) -> Result<f64> + Sync,
    grid: &[f64],
    tol: Tolerance,
) -> Result<MonotonicityReport> {
    if grid.len() < 8 {
        return domain(format!("monotonicity sweep needs at least 8 grid points, got {}", grid.len()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("monotonicity sweep needs a strictly increasing grid");
    }
    let values = grid
        .par_iter()
        .map(|&p| curve(p).map_err(|e| Error::Curve { param: p, source: Box::new(e) }))
        .collect::<Result<Vec<f64>>>()?;
    let mut slopes = Vec::with_capacity(grid.len() - 1);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for k in 0..grid.len() - 1 {
        let dv = values[k + 1] - values[k];
        let slope = dv / (grid[k + 1] - grid[k]);
        slopes.push(slope);
        let excess = match tol {
            Tolerance::Absolute(t) => -slope - t,
            Tolerance::Relative(t) => {
                let scale = values[k].abs().max(values[k + 1].abs());
                if scale == 0.0 { 0.0 } else { -dv / scale - t }
            }
        };
        if excess > 0.0 {
            violations += 1;
            let size = match tol {
                Tolerance::Absolute(_) => -slope,
                Tolerance::Relative(_) => -dv / values[k].abs().max(values[k + 1].abs()),
            };
            worst = worst.max(size);
        }
    }
    Ok(MonotonicityReport { grid: grid.to_vec(), values, slopes, violations, worst_violation: worst })
}

/// Whether each entry is below the previous one, or below `floor`. Used for
/// convergence tables whose errors may already sit at rounding level.
pub fn is_decreasing_with_floor(errors: &[f64], floor: f64) -> bool {
    errors.windows(2).all(|w| w[1] < w[0] || w[1] <= floor)
}
