//! The Gaussian weight `G_t`, its compactly supported analogue `G_{t,n}` and
//! the comparison between the two.
//!
//! ```
//! use dimlift::weights::{finite_weight, gaussian_weight};
//! let g = gaussian_weight(1, 1.0, &[0.0]).unwrap();
//! assert!((g - 1.0 / (4.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
//! // n = 3, d = 1: a constant density on [-√6, √6]
//! let gn = finite_weight(1, 3, 1.0, &[0.0]).unwrap();
//! assert!((gn - 1.0 / (2.0 * 6f64.sqrt())).abs() < 1e-15);
//! ```

use crate::error::{domain, unsupported, Result};
use crate::lift::{ln_sphere_area, norm_sq};
use std::f64::consts::PI;

/// Heat kernel `G_t(x) = (4πt)^{-d/2} exp(-|x|²/(4t))`.
pub fn gaussian_weight(d: usize, t: f64, x: &[f64]) -> Result<f64> {
    check_dim_time(d, t, x)?;
    Ok(gaussian_unchecked(d, t, norm_sq(x)))
}

pub(crate) fn gaussian_unchecked(d: usize, t: f64, r2: f64) -> f64 {
    (4.0 * PI * t).powf(-(d as f64) / 2.0) * (-r2 / (4.0 * t)).exp()
}

fn check_dim_time(d: usize, t: f64, x: &[f64]) -> Result<()> {
    if d == 0 || x.len() != d {
        return domain(format!("expected a point of ℝ^{d}, got {} coordinates", x.len()));
    }
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("time must be positive, got {t}"));
    }
    Ok(())
}

/// Exponent `(nd - d - 2)/2` of `1 - |x|²/(2ndt)` in `G_{t,n}`.
pub fn finite_weight_exponent(d: usize, n: usize) -> f64 {
    (n as f64 * d as f64 - d as f64 - 2.0) / 2.0
}

/// Whether `G_{t,n}` is a genuine (locally integrable, bounded-exponent) density.
pub fn finite_weight_supported(d: usize, n: usize) -> bool {
    d >= 1 && n * d >= d + 2
}

fn ln_finite_prefactor(d: usize, n: usize, t: f64) -> f64 {
    let big_n = n * d;
    ln_sphere_area(big_n - d)
        - ln_sphere_area(big_n)
        - d as f64 / 2.0 * (2.0 * big_n as f64 * t).ln()
}

/// The weight
/// `G_{t,n}(x) = |S^{nd-d-1}| / (|S^{nd-1}| (2ndt)^{d/2}) · (1 - |x|²/(2ndt))^{(nd-d-2)/2}`
/// on the ball `|x|² ≤ 2ndt`, zero outside.
///
/// Configurations with `nd ≤ d + 1` have no density and are rejected.
pub fn finite_weight(d: usize, n: usize, t: f64, x: &[f64]) -> Result<f64> {
    check_dim_time(d, t, x)?;
    if !finite_weight_supported(d, n) {
        return unsupported(format!(
            "G_(t,n) needs nd >= d + 2, got n={n}, d={d}"
        ));
    }
    Ok(finite_unchecked(d, n, t, norm_sq(x)))
}

pub(crate) fn finite_unchecked(d: usize, n: usize, t: f64, r2: f64) -> f64 {
    let s = r2 / (2.0 * (n * d) as f64 * t);
    let a = finite_weight_exponent(d, n);
    if s > 1.0 || (s == 1.0 && a > 0.0) {
        return 0.0;
    }
    (ln_finite_prefactor(d, n, t) + a * (-s).ln_1p()).exp()
}

/// The constant `C_{n,d}` with `G_{t,n} ≤ C_{n,d} G_t` everywhere.
///
/// The ratio `G_{t,n}/G_t` depends on `s = |x|²/(4t)` only and peaks at
/// `s = d/2 + 1`, which lies inside the support when `nd ≥ d + 3`.
pub fn ratio_bound(d: usize, n: usize) -> Result<f64> {
    if d == 0 || n * d < d + 3 {
        return domain(format!(
            "the ratio maximiser leaves the support unless nd >= d + 3 (n={n}, d={d})"
        ));
    }
    let big_n = (n * d) as f64;
    let df = d as f64;
    let ln = ln_sphere_area(n * d - d) - ln_sphere_area(n * d)
        + df / 2.0 * (4.0 * PI / (2.0 * big_n)).ln()
        + (big_n - df - 2.0) / 2.0 * (-(2.0 / big_n) * (df / 2.0 + 1.0)).ln_1p()
        + (df / 2.0 + 1.0);
    Ok(ln.exp())
}

/// Sup-norm relative error of `G_{t,n}` against `G_t` on a grid, per `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightLimitReport {
    /// `(n, sup_x |G_{t,n}(x) - G_t(x)| / G_t(x))`.
    pub rows: Vec<(usize, f64)>,
    /// `error(n_k) / error(n_{k+1})` for consecutive entries.
    pub ratios: Vec<f64>,
}

impl WeightLimitReport {
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].1 < w[0].1)
    }

    /// Whether every consecutive ratio lies in `[lo, hi]`.
    pub fn ratios_within(&self, lo: f64, hi: f64) -> bool {
        self.ratios.iter().all(|r| (lo..=hi).contains(r))
    }
}

/// Tabulate `sup_x |G_{t,n} - G_t| / G_t` over `x_grid` for each `n`.
///
/// Grid points outside the support of `G_{t,n}` contribute the value 1.
pub fn weight_limit_report(
    d: usize,
    t: f64,
    x_grid: &[Vec<f64>],
    n_list: &[usize],
) -> Result<WeightLimitReport> {
    if x_grid.is_empty() || n_list.is_empty() {
        return domain("weight limit report needs a non-empty grid and n list");
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mut sup = 0.0f64;
        for x in x_grid {
            let g = gaussian_weight(d, t, x)?;
            let gn = finite_weight(d, n, t, x)?;
            let e = if gn == 0.0 { 1.0 } else { (gn - g).abs() / g };
            sup = sup.max(e);
        }
        rows.push((n, sup));
    }
    let ratios = rows.windows(2).map(|w| w[0].1 / w[1].1).collect();
    Ok(WeightLimitReport { rows, ratios })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_at_origin() {
        assert_relative_eq!(
            gaussian_weight(2, 0.5, &[0.0, 0.0]).unwrap(),
            1.0 / (2.0 * PI),
            max_relative = 1e-15
        );
        assert!(gaussian_weight(1, 0.0, &[0.0]).is_err());
        assert!(gaussian_weight(2, 1.0, &[0.0]).is_err());
    }

    #[test]
    fn finite_weight_examples() {
        let c = 1.0 / (2.0 * 6f64.sqrt());
        assert_relative_eq!(finite_weight(1, 3, 1.0, &[0.0]).unwrap(), c, max_relative = 1e-14);
        assert_relative_eq!(finite_weight(1, 3, 1.0, &[2.0]).unwrap(), c, max_relative = 1e-14);
        assert_eq!(finite_weight(1, 3, 1.0, &[2.5]).unwrap(), 0.0);
        assert!(matches!(
            finite_weight(1, 2, 1.0, &[0.0]),
            Err(crate::Error::Unsupported(_))
        ));
    }

    // Direct evaluation of the closed form without logs, n = 5, d = 1:
    // |S³|/(|S⁴| √10) = 2π² / ((8π²/3) √10), exponent 1.
    #[test]
    fn finite_weight_direct_closed_form() {
        let pref = 2.0 * PI * PI / (8.0 * PI * PI / 3.0) / 10f64.sqrt();
        let x = 1.3;
        let want = pref * (1.0 - x * x / 10.0);
        assert_relative_eq!(finite_weight(1, 5, 1.0, &[x]).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn ratio_bound_values() {
        // Values from a 30-digit evaluation of the same closed form.
        assert_relative_eq!(ratio_bound(1, 4).unwrap(), 1.7879352577708445, max_relative = 1e-12);
        assert_relative_eq!(ratio_bound(2, 5).unwrap(), 1.2768288938952164, max_relative = 1e-12);
        assert!(ratio_bound(1, 3).is_err());
    }

    #[test]
    fn ratio_bound_is_attained_on_a_grid() {
        let bound = ratio_bound(2, 5).unwrap();
        let mut sup = 0.0f64;
        for i in 0..100 {
            for j in 0..100 {
                let x = [-4.0 + 8.0 * i as f64 / 99.0, -4.0 + 8.0 * j as f64 / 99.0];
                let r = finite_weight(2, 5, 1.0, &x).unwrap() / gaussian_weight(2, 1.0, &x).unwrap();
                sup = sup.max(r);
            }
        }
        assert!(sup <= bound * (1.0 + 1e-12));
        assert!(sup >= 0.999 * bound, "grid sup {sup} vs bound {bound}");
    }

    #[test]
    fn limit_report_on_default_grid() {
        let grid: Vec<Vec<f64>> = (0..201).map(|k| vec![-2.0 + 0.02 * k as f64]).collect();
        let rep = weight_limit_report(1, 1.0, &grid, &[8, 16, 32, 64, 128]).unwrap();
        assert!(rep.strictly_decreasing());
        assert!(rep.ratios_within(1.6, 2.4), "{:?}", rep.ratios);
        // 30-digit reference for n = 8
        assert_relative_eq!(rep.rows[0].1, 0.19534339650063642, max_relative = 1e-10);
    }
}
