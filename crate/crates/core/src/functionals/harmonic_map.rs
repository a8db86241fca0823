//! Scaled energies of sphere-valued maps: the elliptic density ratio, the
//! heat-kernel weighted energy and its lifted form.

use super::require_lift;
use crate::error::{domain, Result};
use crate::fields::{NonhomTerm, SphereField};
use crate::integrate::{integrate_ball, integrate_weighted, QuadratureSpec, Weight};
use crate::lift::{norm_sq, LiftConfig};

/// `φ(r) = r^{2-N} ∫_{B(y₀, r)} |Dv|²`.
pub fn hm_phi(v: &dyn SphereField, y0: &[f64], r: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(r > 0.0) {
        return domain("radius must be positive");
    }
    let dim = y0.len();
    let e = integrate_ball(|y| Ok(v.jet(y)?.energy()), y0, 0.0, r, spec)?.value;
    Ok(r.powf(2.0 - dim as f64) * e)
}

/// Lower bound `2 r^{1-N} ∫_{B(y₀, r)} H·((y - y₀)·Dv)` for `φ'(r)` when
/// `-Δv = |Dv|² v + H + h v`. The omitted term is the non-negative boundary
/// integral `2 r^{-N} ∫_{∂B} |(y - y₀)·Dv|²`.
pub fn hm_dphi_lower_bound(
    v: &dyn SphereField,
    h: &NonhomTerm,
    y0: &[f64],
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let dim = y0.len();
    let m = v.target_dim();
    let s = integrate_ball(
        |y| {
            let j = v.jet(y)?;
            let w: Vec<f64> = y.iter().zip(y0).map(|(a, b)| a - b).collect();
            let dir = j.directional(&w);
            let hv = h.eval_vector(y, m)?;
            Ok(crate::lift::dot(&hv, &dir))
        },
        y0,
        0.0,
        r,
        spec,
    )?
    .value;
    Ok(2.0 * r.powf(1.0 - dim as f64) * s)
}

/// `Φ(t) = t ∫ |Du|² G_t` for a time-independent map on `ℝ^d`.
pub fn struwe_phi(u: &dyn SphereField, d: usize, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(t * integrate_weighted(|x| Ok(u.jet(x)?.energy()), Weight::Gaussian, d, t, spec)?.value)
}

/// `Φ_n(t) = (nd/(nd-2)) t ∫ |Du|² G_{t,n} - (1/(nd-2)) ∫ |x·∇u|² G_{t,n}`,
/// the density ratio of the lifted map, for time-independent `u`.
pub fn lifted_hm_phi(u: &dyn SphereField, cfg: LiftConfig, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    require_lift(cfg)?;
    let nd = cfg.big_n() as f64;
    let w = Weight::Finite { n: cfg.n };
    let e = integrate_weighted(|x| Ok(u.jet(x)?.energy()), w, cfg.d, t, spec)?.value;
    let rad = integrate_weighted(|x| Ok(norm_sq(&u.jet(x)?.directional(x))), w, cfg.d, t, spec)?.value;
    Ok(nd / (nd - 2.0) * t * e - rad / (nd - 2.0))
}
