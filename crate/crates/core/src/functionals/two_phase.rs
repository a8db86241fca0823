//! Two-phase monotonicity: the elliptic product of weighted Dirichlet
//! energies, its parabolic analogue with the heat kernel, and the lifted form.

use super::require_lift;
use crate::error::{domain, Result};
use crate::fields::{NonhomTerm, ScalarField, SpaceTimeField};
use crate::integrate::{integrate_ball, integrate_spacetime, rules, QuadratureSpec, Weight};
use crate::lift::{dot, norm_sq, LiftConfig};

/// A product functional with its per-phase factors.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhaseReport {
    pub value: f64,
    pub factors: [f64; 2],
    /// Fraction of `∂B_r` where each phase is positive (elliptic only).
    pub support_fractions: Option<[f64; 2]>,
}

fn energy_factor(v: &dyn ScalarField, dim: usize, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    let c = vec![0.0; dim];
    Ok(integrate_ball(
        |y| Ok(norm_sq(&v.jet(y)?.gradient) * norm_sq(y).powf(1.0 - dim as f64 / 2.0)),
        &c,
        0.0,
        r,
        spec,
    )?
    .value)
}

/// `φ(r) = r^{-4} ∏_i ∫_{B_r} |∇v_i|² |y|^{2-N} dy` in `ℝ^dim`.
pub fn acf_phi(
    v1: &dyn ScalarField,
    v2: &dyn ScalarField,
    dim: usize,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<TwoPhaseReport> {
    if !(r > 0.0) {
        return domain("radius must be positive");
    }
    let f1 = energy_factor(v1, dim, r, spec)?;
    let f2 = energy_factor(v2, dim, r, spec)?;
    Ok(TwoPhaseReport {
        value: f1 * f2 / r.powi(4),
        factors: [f1, f2],
        support_fractions: Some([support_fraction(v1, dim, r, spec)?, support_fraction(v2, dim, r, spec)?]),
    })
}

/// Fraction of `∂B_r` on which `v > 0`, at the resolution of the angular rule.
pub fn support_fraction(v: &dyn ScalarField, dim: usize, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    let rule = rules::sphere_rule(dim, spec.angular_rule, 4 * spec.angular_nodes)?;
    let mut y = vec![0.0; dim];
    let mut frac = 0.0;
    for (omega, w) in rule.iter() {
        for (yi, oi) in y.iter_mut().zip(omega) {
            *yi = r * oi;
        }
        if v.value(&y)? > 0.0 {
            frac += w;
        }
    }
    Ok(frac)
}

/// `ψ(s) = ½ log(1/(4s)) + 3/2` for `s < 1/4` and `2(1 - s)` on `[1/4, 1]`.
pub fn psi(s: f64) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0) {
        return domain(format!("ψ is defined on (0, 1], got {s}"));
    }
    Ok(if s < 0.25 { 0.5 * (1.0 / (4.0 * s)).ln() + 1.5 } else { 2.0 * (1.0 - s) })
}

/// Lower bound for `φ'(r)` when `Δv_i ≥ h_i` on the positivity sets:
///
/// `(2/r⁵)[ψ(s₁) A₁ E₂ + ψ(s₂) E₁ A₂]`, with `A_i = ∫_{B_r} v_i h_i |y|^{2-N}`,
/// `E_i = ∫_{B_r} |∇v_i|² |y|^{2-N}` and `s_i` the support fractions.
pub fn acf_dphi_lower_bound(
    (v1, h1): (&dyn ScalarField, &NonhomTerm),
    (v2, h2): (&dyn ScalarField, &NonhomTerm),
    dim: usize,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let rep = acf_phi(v1, v2, dim, r, spec)?;
    let [s1, s2] = rep.support_fractions.unwrap();
    let c = vec![0.0; dim];
    let source = |v: &dyn ScalarField, h: &NonhomTerm| -> Result<f64> {
        Ok(integrate_ball(
            |y| Ok(v.value(y)? * h.eval_scalar(y)? * norm_sq(y).powf(1.0 - dim as f64 / 2.0)),
            &c,
            0.0,
            r,
            spec,
        )?
        .value)
    };
    let a1 = source(v1, h1)?;
    let a2 = source(v2, h2)?;
    let mut total = 0.0;
    if a1 != 0.0 {
        total += psi(s1)? * a1 * rep.factors[1];
    }
    if a2 != 0.0 {
        total += psi(s2)? * rep.factors[0] * a2;
    }
    Ok(2.0 / r.powi(5) * total)
}

/// `Φ(τ) = τ^{-2} ∏_i ∫_0^τ ∫ |∇u_i|² G_t dx dt`.
pub fn caffarelli_phi(
    u1: &dyn SpaceTimeField,
    u2: &dyn SpaceTimeField,
    d: usize,
    tau: f64,
    spec: &QuadratureSpec,
) -> Result<TwoPhaseReport> {
    let f = |u: &dyn SpaceTimeField| -> Result<f64> {
        Ok(integrate_spacetime(|x, t| Ok(norm_sq(&u.jet(x, t)?.gradient)), Weight::Gaussian, d, tau, spec)?.value)
    };
    let (f1, f2) = (f(u1)?, f(u2)?);
    Ok(TwoPhaseReport { value: f1 * f2 / (tau * tau), factors: [f1, f2], support_fractions: None })
}

/// `Φ_n(τ) = τ^{-2} ∏_i ∫_0^τ ∫ (|∇u_i|² + (2/(nd)) ((x,t)·∇u_i) ∂_t u_i) G_{t,n}`.
pub fn lifted_two_phase(
    u1: &dyn SpaceTimeField,
    u2: &dyn SpaceTimeField,
    cfg: LiftConfig,
    tau: f64,
    spec: &QuadratureSpec,
) -> Result<TwoPhaseReport> {
    require_lift(cfg)?;
    let k = 2.0 / cfg.big_n() as f64;
    let f = |u: &dyn SpaceTimeField| -> Result<f64> {
        Ok(integrate_spacetime(
            |x, t| {
                let j = u.jet(x, t)?;
                Ok(norm_sq(&j.gradient) + k * (dot(x, &j.gradient) + t * j.dt) * j.dt)
            },
            Weight::Finite { n: cfg.n },
            cfg.d,
            tau,
            spec,
        )?
        .value)
    };
    let (f1, f2) = (f(u1)?, f(u2)?);
    Ok(TwoPhaseReport { value: f1 * f2 / (tau * tau), factors: [f1, f2], support_fractions: None })
}
