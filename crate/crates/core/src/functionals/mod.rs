//! Monotone quantities on both sides of the lift.
//!
//! Each parabolic functional has an elliptic counterpart in `ℝ^{n·d}` and a
//! "lifted" form: the elliptic quantity written back in `(x, t)` against
//! `G_{t,n}`, which converges to the parabolic one as `n → ∞`.

mod carleman;
mod frequency;
mod harmonic_map;
mod surfaces;
mod sweep;
mod two_phase;

pub use carleman::{
    carleman_elliptic_check, carleman_elliptic_constant, carleman_parabolic_check, CarlemanReport,
};
pub use frequency::{almgren, almgren_dl_lower_bound, almgren_terms, AlmgrenTerms, lifted_frequency, poon, FrequencyValues};
pub use harmonic_map::{hm_dphi_lower_bound, hm_phi, lifted_hm_phi, struwe_phi};
pub use surfaces::{
    graph_mean_curvature, huisken_density, lifted_mcf_density, mcf_residual, ms_density,
    ms_density_tilde, MsDensity,
};
pub use sweep::{is_decreasing_with_floor, monotonicity_sweep, MonotonicityReport, Tolerance};
pub use two_phase::{
    acf_dphi_lower_bound, acf_phi, caffarelli_phi, lifted_two_phase, psi, support_fraction,
    TwoPhaseReport,
};

use crate::error::{Error, Result};

/// Denominators below this raise [`Error::Degenerate`].
pub const DENOMINATOR_FLOOR: f64 = 1e-30;

pub(crate) fn ratio(num: f64, den: f64, what: &'static str) -> Result<f64> {
    if den.abs() < DENOMINATOR_FLOOR {
        return Err(Error::Degenerate { what, value: den });
    }
    Ok(num / den)
}

pub(crate) fn require_lift(cfg: crate::lift::LiftConfig) -> Result<()> {
    if !crate::weights::finite_weight_supported(cfg.d, cfg.n) {
        return crate::error::unsupported(format!(
            "lifted functionals need nd >= d + 2, got n={}, d={}",
            cfg.n, cfg.d
        ));
    }
    Ok(())
}
