//! Graph hypersurfaces: mean curvature, the minimal-surface density ratio and
//! its perturbed form, and the Gaussian density of a graph flow.

use super::require_lift;
use crate::error::{domain, Result};
use crate::fields::{NonhomTerm, ScalarField, ScalarJet};
use crate::integrate::{integrate_weighted, refine, rules, QuadratureSpec, Weight};
use crate::lift::{dot, norm_sq, LiftConfig};
use std::f64::consts::PI;

/// `H = Δv/√(1+|∇v|²) - (1+|∇v|²)^{-3/2} Σ v_i v_j v_ij`.
pub fn graph_mean_curvature(sigma: &dyn ScalarField, y: &[f64]) -> Result<f64> {
    Ok(curvature_of(&sigma.jet(y)?))
}

fn curvature_of(j: &ScalarJet) -> f64 {
    let q = 1.0 + norm_sq(&j.gradient);
    (j.laplacian() - hess_form(j) / q) / q.sqrt()
}

fn hess_form(j: &ScalarJet) -> f64 {
    let n = j.gradient.len();
    let mut s = 0.0;
    for a in 0..n {
        for b in 0..n {
            s += j.gradient[a] * j.gradient[b] * j.hess(a, b);
        }
    }
    s
}

/// Largest `ρ ≤ cap` with `ρ² + f(ρ)² ≤ cap²`, found by bisection; zero when
/// even `ρ = 0` lies outside.
fn slice_radius(cap: f64, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let excess = |rho: f64, v: f64| rho * rho + v * v - cap * cap;
    if excess(0.0, f(0.0)?) >= 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, cap);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid, f(mid)?) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn offset(center: &[f64], rho: f64, omega: &[f64]) -> Vec<f64> {
    center.iter().zip(omega).map(|(c, o)| c + rho * o).collect()
}

fn split_point(w0: &[f64]) -> Result<(&[f64], f64)> {
    if w0.len() < 2 {
        return domain("the base point lives in ℝ^{N+1} with N >= 1");
    }
    let (y0, v0) = w0.split_at(w0.len() - 1);
    Ok((y0, v0[0]))
}

/// `N/(|S^{N-1}| r^N) ∫ f √(1+|∇v|²) dy` over the projected slice
/// `{|y - y₀|² + (v - v₀)² ≤ r²}`, computed direction by direction.
fn slice_average(
    sigma: &dyn ScalarField,
    w0: &[f64],
    r: f64,
    spec: &QuadratureSpec,
    f: &dyn Fn(&[f64], &ScalarJet) -> Result<f64>,
) -> Result<f64> {
    if !(r > 0.0) {
        return domain("radius must be positive");
    }
    let (y0, v0) = split_point(w0)?;
    let dim = y0.len();
    let est = refine("slice quadrature", spec, |s| {
        let sphere = rules::sphere_rule(dim, s.angular_rule, s.angular_nodes)?;
        let radial = rules::gauss_jacobi(s.radial_nodes, 0.0, dim as f64 - 1.0)?;
        let (mut sum, mut abs, mut evals) = (0.0, 0.0, 0u64);
        for (omega, wa) in sphere.iter() {
            let top = slice_radius(r, |rho| Ok(sigma.value(&offset(y0, rho, omega))? - v0))?;
            if top == 0.0 {
                continue;
            }
            let scale = wa * (top / r).powi(dim as i32);
            for (&z, &wz) in radial.nodes.iter().zip(&radial.weights) {
                let y = offset(y0, top * (1.0 + z) / 2.0, omega);
                let j = sigma.jet(&y)?;
                let v = f(&y, &j)? * (1.0 + norm_sq(&j.gradient)).sqrt();
                sum += scale * wz * v;
                abs += scale * wz * v.abs();
                evals += 1;
            }
        }
        Ok((sum, abs, evals))
    })?;
    Ok(est.value)
}

/// `Θ(r) = Vol(B_r(w₀) ∩ Σ) / (|B_1| r^N)` for a graph `Σ ⊂ ℝ^{N+1}`;
/// `w0 = (y₀, v₀)`.
///
/// ```
/// use dimlift::fields::GraphSurface;
/// use dimlift::functionals::ms_density;
/// use dimlift::integrate::QuadratureSpec;
/// // a plane at height 0.6 seen from the origin with r = 1
/// let theta = ms_density(&GraphSurface::plane(0.6), &[0.0, 0.0, 0.0], 1.0, &QuadratureSpec::default()).unwrap();
/// assert!((theta - 0.64).abs() < 1e-12);
/// ```
pub fn ms_density(sigma: &dyn ScalarField, w0: &[f64], r: f64, spec: &QuadratureSpec) -> Result<f64> {
    slice_average(sigma, w0, r, spec, &|_, _| Ok(1.0))
}

/// Perturbed density ratio and the boundary integral its derivative equals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MsDensity {
    pub theta_tilde: f64,
    pub derivative_rhs: f64,
}

/// For a graph with mean curvature `h`:
/// `θ̃(r) = N/(|S^{N-1}| r^N) ∫_{B_r ∩ Σ} (1 + h (w - w₀)·ν / N)` and
/// `θ̃'(r) = N/(|S^{N-1}| r^{N+1}) ∫_{∂B_r ∩ Σ} (|(w-w₀)^⊥|² + h (w-w₀)·ν r²/N) / |(w-w₀)^T|`.
pub fn ms_density_tilde(
    sigma: &dyn ScalarField,
    h: &NonhomTerm,
    w0: &[f64],
    r: f64,
    spec: &QuadratureSpec,
) -> Result<MsDensity> {
    let (y0, v0) = split_point(w0)?;
    let big_n = y0.len() as f64;
    let normal_part = |y: &[f64], j: &ScalarJet| {
        let rel: Vec<f64> = y.iter().zip(y0).map(|(a, b)| a - b).collect();
        (j.value - v0 - dot(&rel, &j.gradient)) / (1.0 + norm_sq(&j.gradient)).sqrt()
    };
    let theta_tilde = slice_average(sigma, w0, r, spec, &|y, j| {
        Ok(1.0 + h.eval_scalar(y)? * normal_part(y, j) / big_n)
    })?;

    let dim = y0.len();
    let rhs = refine("slice boundary quadrature", spec, |s| {
        let sphere = rules::sphere_rule(dim, s.angular_rule, s.angular_nodes * 2)?;
        let (mut sum, mut abs, mut evals) = (0.0, 0.0, 0u64);
        for (omega, wa) in sphere.iter() {
            let top = slice_radius(r, |rho| Ok(sigma.value(&offset(y0, rho, omega))? - v0))?;
            if top == 0.0 {
                continue;
            }
            let y = offset(y0, top, omega);
            let j = sigma.jet(&y)?;
            let wn = normal_part(&y, &j);
            let q = wn * wn + h.eval_scalar(&y)? * wn * r * r / big_n;
            // ρ* moves with r at rate r / (ρ* + (v - v₀) ω·∇v)
            let speed = top + (j.value - v0) * dot(omega, &j.gradient);
            if !(speed > 0.0) {
                return domain(format!("the slice is tangent to the sphere at r = {r}"));
            }
            let v = q * (1.0 + norm_sq(&j.gradient)).sqrt() * top.powi(dim as i32 - 1) / speed;
            sum += wa * v;
            abs += wa * v.abs();
            evals += 1;
        }
        Ok((sum, abs, evals))
    })?;
    Ok(MsDensity { theta_tilde, derivative_rhs: big_n / r.powi(dim as i32 + 1) * rhs.value })
}

/// `ϑ(t) = ∫ t^{-d/2} e^{-(|x|² + u²)/4t} √(1+|∇u|²) dx`.
pub fn huisken_density(u: &dyn ScalarField, d: usize, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    let c = (4.0 * PI).powf(d as f64 / 2.0);
    let est = integrate_weighted(
        |x| {
            let j = u.jet(x)?;
            Ok((-j.value * j.value / (4.0 * t)).exp() * (1.0 + norm_sq(&j.gradient)).sqrt())
        },
        Weight::Gaussian,
        d,
        t,
        spec,
    )?;
    Ok(c * est.value)
}

/// `∂_t u + Δu - (1+|∇u|²)^{-1} Σ u_i u_j u_ij`, for a time-independent graph.
pub fn mcf_residual(u: &dyn ScalarField, x: &[f64], t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return domain("graph flows live on t > 0");
    }
    let j = u.jet(x)?;
    Ok(j.laplacian() - hess_form(&j) / (1.0 + norm_sq(&j.gradient)))
}

/// `Φ_n(t) = (4π)^{d/2} ∫ √(1+|∇u|²) G^u_{t,n} dx`, where `G^u_{t,n}` is
/// `G_{t,n}` with `|x|²` replaced by `|x|² + u²`.
///
/// Along each direction `ω` the support ends at `ρ*` with
/// `ρ*² + u(ρ*ω)² = 2ndt`; with `ρ = ρ* √s` the weight factors as
/// `(1-s)^a s^{d/2-1}` times a smooth remainder, so a Gauss–Jacobi rule in `s`
/// sees no kink.
pub fn lifted_mcf_density(u: &dyn ScalarField, cfg: LiftConfig, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    require_lift(cfg)?;
    if !(t > 0.0) {
        return domain("t must be positive");
    }
    let d = cfg.d;
    let a = crate::weights::finite_weight_exponent(d, cfg.n);
    let big_r = (2.0 * cfg.big_n() as f64 * t).sqrt();
    let zero = vec![0.0; d];
    let est = refine("lifted density quadrature", spec, |s| {
        let sphere = rules::sphere_rule(d, s.angular_rule, s.angular_nodes)?;
        let radial = rules::gauss_jacobi(s.radial_nodes, a, d as f64 / 2.0 - 1.0)?;
        let (mut sum, mut abs, mut evals) = (0.0, 0.0, 0u64);
        for (omega, wa) in sphere.iter() {
            let top = slice_radius(big_r, |rho| u.value(&offset(&zero, rho, omega)))?;
            if top == 0.0 {
                continue;
            }
            let scale = wa * (top / big_r).powi(d as i32);
            for (&z, &wz) in radial.nodes.iter().zip(&radial.weights) {
                let sv = (1.0 + z) / 2.0;
                let rho = top * sv.sqrt();
                let x = offset(&zero, rho, omega);
                let j = u.jet(&x)?;
                let q = 1.0 - (rho * rho + j.value * j.value) / (big_r * big_r);
                let g = q / (1.0 - sv);
                if !(g > 0.0) {
                    continue;
                }
                let v = (1.0 + norm_sq(&j.gradient)).sqrt() * (a * g.ln()).exp();
                sum += scale * wz * v;
                abs += scale * wz * v.abs();
                evals += 1;
            }
        }
        Ok((sum, abs, evals))
    })?;
    Ok((4.0 * PI).powf(d as f64 / 2.0) * est.value)
}
