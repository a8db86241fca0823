//! Weighted integrals over `ℝ^d` and space-time slabs, by deterministic
//! quadrature and by Monte Carlo.
//!
//! The quadratures are radial Gauss rules matched to the weight, times an
//! angular rule on the sphere:
//!
//! * `G_t dx`: with `|x|² = 4ts`, the radial law of `s` is `Gamma(d/2)`, so a
//!   generalised Gauss–Laguerre rule is exact for polynomial integrands.
//! * `G_{t,n} dx`: with `|x|² = 2ndt·u`, `u` is `Beta(d/2, (nd-d)/2)`, handled by
//!   a Gauss–Jacobi rule. For `n = 1` the push-forward law is the uniform
//!   measure on the sphere of radius `√(2dt)`, which is used directly.
//!
//! Every estimate is refined by doubling all node counts until two successive
//! values agree to `target_rel_tol` relative to `∫|φ| w`.

pub mod pushforward;
pub mod rules;
pub mod sampling;

use crate::error::{domain, unsupported, Error, Result};
use crate::weights::finite_weight_exponent;
pub use rules::{AngularRule, GaussRule, SphereRule};
use std::sync::Arc;

/// Node counts and tolerance of the deterministic quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub radial_nodes: usize,
    pub angular_rule: AngularRule,
    /// Resolution per polar angle of the angular rule.
    pub angular_nodes: usize,
    pub time_nodes: usize,
    pub target_rel_tol: f64,
    /// Number of node doublings tried before giving up.
    pub max_doublings: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial_nodes: 24,
            angular_rule: AngularRule::ProductGauss,
            angular_nodes: 8,
            time_nodes: 16,
            target_rel_tol: 1e-10,
            max_doublings: 3,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_rel_tol = tol;
        self
    }

    pub fn with_nodes(mut self, radial: usize, angular: usize, time: usize) -> Self {
        self.radial_nodes = radial;
        self.angular_nodes = angular;
        self.time_nodes = time;
        self
    }

    fn level(&self, k: u32) -> Self {
        let f = 1usize << k;
        Self {
            radial_nodes: self.radial_nodes * f,
            angular_nodes: self.angular_nodes * f,
            time_nodes: self.time_nodes * f,
            ..*self
        }
    }

    fn validate(&self) -> Result<()> {
        if self.radial_nodes == 0 || self.angular_nodes == 0 || self.time_nodes == 0 {
            return domain("quadrature node counts must be positive");
        }
        if !(self.target_rel_tol > 0.0) {
            return domain("target_rel_tol must be positive");
        }
        Ok(())
    }
}

/// How an [`IntegralEstimate`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

/// A value with an error estimate: the last refinement step for quadrature,
/// the standard error of the mean for Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub std_error: f64,
    pub method: Method,
    pub evaluations: u64,
}

/// The weight against which a spatial integral is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// The heat kernel `G_t`.
    Gaussian,
    /// The push-forward law of the uniform measure on `S_t^n`; equal to
    /// `G_{t,n} dx` whenever `nd ≥ d + 2`.
    Finite { n: usize },
}

/// Radial part of a weight: `|x| = scale·g(node)` with probability weights.
struct Radial {
    rule: Option<Arc<GaussRule>>,
    kind: RadialKind,
}

enum RadialKind {
    Laguerre { four_t: f64 },
    Jacobi { r2: f64 },
    Shell { r: f64 },
}

impl Radial {
    fn new(weight: Weight, d: usize, t: f64, nodes: usize) -> Result<Self> {
        let beta = d as f64 / 2.0 - 1.0;
        match weight {
            Weight::Gaussian => Ok(Self {
                rule: Some(rules::gauss_laguerre(nodes, beta)?),
                kind: RadialKind::Laguerre { four_t: 4.0 * t },
            }),
            Weight::Finite { n: 0 } => domain("finite weight needs n >= 1"),
            Weight::Finite { n: 1 } => Ok(Self {
                rule: None,
                kind: RadialKind::Shell { r: (2.0 * d as f64 * t).sqrt() },
            }),
            Weight::Finite { n } => Ok(Self {
                rule: Some(rules::gauss_jacobi(nodes, finite_weight_exponent(d, n), beta)?),
                kind: RadialKind::Jacobi { r2: 2.0 * (n * d) as f64 * t },
            }),
        }
    }

    fn for_each(&self, mut f: impl FnMut(f64, f64)) {
        match (&self.kind, &self.rule) {
            (RadialKind::Shell { r }, _) => f(*r, 1.0),
            (RadialKind::Laguerre { four_t }, Some(rule)) => {
                for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
                    f((four_t * s).sqrt(), w);
                }
            }
            (RadialKind::Jacobi { r2 }, Some(rule)) => {
                for (&z, &w) in rule.nodes.iter().zip(&rule.weights) {
                    f((r2 * (1.0 + z) / 2.0).sqrt(), w);
                }
            }
            _ => unreachable!(),
        }
    }
}

fn check_weight_args(d: usize, t: f64) -> Result<()> {
    if d == 0 {
        return domain("dimension d must be at least 1");
    }
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("time must be positive, got {t}"));
    }
    Ok(())
}

/// One pass of the product rule: returns `(Σ wφ, Σ w|φ|, evaluations)`.
fn weighted_pass(
    phi: &mut dyn FnMut(&[f64]) -> Result<f64>,
    weight: Weight,
    d: usize,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64, u64)> {
    let radial = Radial::new(weight, d, t, spec.radial_nodes)?;
    let sphere = rules::sphere_rule(d, spec.angular_rule, spec.angular_nodes)?;
    let mut x = vec![0.0; d];
    let (mut sum, mut abs, mut evals) = (0.0, 0.0, 0u64);
    let mut err = None;
    radial.for_each(|r, wr| {
        if err.is_some() {
            return;
        }
        for (omega, wa) in sphere.iter() {
            for (xi, oi) in x.iter_mut().zip(omega) {
                *xi = r * oi;
            }
            match phi(&x) {
                Ok(v) => {
                    sum += wr * wa * v;
                    abs += wr * wa * v.abs();
                    evals += 1;
                }
                Err(e) => {
                    err = Some(e);
                    return;
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok((sum, abs, evals)),
    }
}

/// Differences below this count as agreement, so integrands that vanish up
/// to rounding do not fail to converge.
pub const ABSOLUTE_FLOOR: f64 = 1e-14;

/// Repeat `pass` with doubled node counts until two values agree.
pub(crate) fn refine(
    what: &str,
    spec: &QuadratureSpec,
    mut pass: impl FnMut(&QuadratureSpec) -> Result<(f64, f64, u64)>,
) -> Result<IntegralEstimate> {
    spec.validate()?;
    let (mut prev, _, mut evals) = pass(spec)?;
    if spec.max_doublings == 0 {
        return Ok(IntegralEstimate {
            value: prev,
            std_error: f64::NAN,
            method: Method::Quadrature,
            evaluations: evals,
        });
    }
    for k in 1..=spec.max_doublings {
        let (v, scale, e) = pass(&spec.level(k))?;
        evals += e;
        let diff = (v - prev).abs();
        if diff <= spec.target_rel_tol * scale || diff <= ABSOLUTE_FLOOR {
            return Ok(IntegralEstimate {
                value: v,
                std_error: diff,
                method: Method::Quadrature,
                evaluations: evals,
            });
        }
        if k == spec.max_doublings {
            return Err(Error::Accuracy { what: what.to_string(), last: v, previous: prev });
        }
        prev = v;
    }
    unreachable!()
}

/// `∫ φ(x) w(x) dx` over `ℝ^d` for `w = G_t` or `w = G_{t,n}`.
///
/// ```
/// use dimlift::integrate::{integrate_weighted, QuadratureSpec, Weight};
/// let spec = QuadratureSpec::default();
/// let m2 = integrate_weighted(|x| Ok(x[0] * x[0]), Weight::Finite { n: 7 }, 1, 1.5, &spec).unwrap();
/// assert!((m2.value - 3.0).abs() < 1e-12);
/// ```
pub fn integrate_weighted(
    mut phi: impl FnMut(&[f64]) -> Result<f64>,
    weight: Weight,
    d: usize,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    check_weight_args(d, t)?;
    refine("weighted quadrature", spec, |s| weighted_pass(&mut phi, weight, d, t, s))
}

/// Time rule on `(t0, t1)`: plain Legendre, or Jacobi in `s = t/t1` with the
/// factor `s^p` built into the weight.
#[derive(Debug, Clone, Copy)]
enum TimeRule {
    Legendre { t0: f64, t1: f64 },
    Power { t1: f64, p: f64 },
}

fn time_nodes(rule: TimeRule, nodes: usize) -> Result<Vec<(f64, f64)>> {
    Ok(match rule {
        TimeRule::Legendre { t0, t1 } => {
            let r = rules::gauss_legendre(nodes)?;
            let h = t1 - t0;
            r.nodes
                .iter()
                .zip(&r.weights)
                .map(|(&z, &w)| (t0 + h * (1.0 + z) / 2.0, w * h))
                .collect()
        }
        TimeRule::Power { t1, p } => {
            let r = rules::gauss_jacobi(nodes, 0.0, p)?;
            let mass = t1 / (p + 1.0);
            r.nodes
                .iter()
                .zip(&r.weights)
                .map(|(&z, &w)| (t1 * (1.0 + z) / 2.0, w * mass))
                .collect()
        }
    })
}

fn spacetime_pass(
    phi: &mut dyn FnMut(&[f64], f64) -> Result<f64>,
    weight: Weight,
    d: usize,
    rule: TimeRule,
    spec: &QuadratureSpec,
) -> Result<(f64, f64, u64)> {
    let (mut sum, mut abs, mut evals) = (0.0, 0.0, 0u64);
    for (t, wt) in time_nodes(rule, spec.time_nodes)? {
        let (s, a, e) = weighted_pass(&mut |x| phi(x, t), weight, d, t, spec)?;
        sum += wt * s;
        abs += wt * a;
        evals += e;
    }
    Ok((sum, abs, evals))
}

/// `∫_0^τ ∫ φ(x, t) w_t(x) dx dt`.
pub fn integrate_spacetime(
    phi: impl FnMut(&[f64], f64) -> Result<f64>,
    weight: Weight,
    d: usize,
    tau: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    integrate_spacetime_window(phi, weight, d, 0.0, tau, spec)
}

/// `∫_{t0}^{t1} ∫ φ(x, t) w_t(x) dx dt` with `0 ≤ t0 < t1`.
pub fn integrate_spacetime_window(
    mut phi: impl FnMut(&[f64], f64) -> Result<f64>,
    weight: Weight,
    d: usize,
    t0: f64,
    t1: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    check_weight_args(d, t1)?;
    if !(t0 >= 0.0 && t0 < t1) {
        return domain(format!("time window must satisfy 0 <= t0 < t1, got [{t0}, {t1}]"));
    }
    let rule = TimeRule::Legendre { t0, t1 };
    refine("space-time quadrature", spec, |s| spacetime_pass(&mut phi, weight, d, rule, s))
}

/// `∫_0^τ (t/τ)^p ∫ φ(x, t) w_t(x) dx dt` with the power folded into a
/// Gauss–Jacobi time rule, so large `p` costs nothing extra.
pub fn integrate_spacetime_powered(
    mut phi: impl FnMut(&[f64], f64) -> Result<f64>,
    weight: Weight,
    d: usize,
    tau: f64,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    check_weight_args(d, tau)?;
    if !(p > -1.0) {
        return domain(format!("time power must exceed -1, got {p}"));
    }
    let rule = TimeRule::Power { t1: tau, p };
    refine("space-time quadrature", spec, |s| spacetime_pass(&mut phi, weight, d, rule, s))
}

/// `∫_{r0 < |y - c| < r1} f(y) dy` over a shell in `ℝ^dim` (`r0 = 0` for a ball).
///
/// The radial rule is Gauss–Legendre in `|y - c|`, so integrands carrying a
/// factor `|y - c|^{2-dim}` are handled without loss.
pub fn integrate_ball(
    mut f: impl FnMut(&[f64]) -> Result<f64>,
    center: &[f64],
    r0: f64,
    r1: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    let dim = center.len();
    if dim == 0 {
        return domain("ball integral needs dimension >= 1");
    }
    if !(r0 >= 0.0 && r1 > r0) {
        return domain(format!("radii must satisfy 0 <= r0 < r1, got {r0}, {r1}"));
    }
    let area = crate::lift::sphere_area(dim)?;
    refine("ball quadrature", spec, |s| {
        let radial = rules::gauss_legendre(s.radial_nodes)?;
        let sphere = rules::sphere_rule(dim, s.angular_rule, s.angular_nodes)?;
        let h = r1 - r0;
        let mut y = vec![0.0; dim];
        let (mut sum, mut abs, mut evals) = (0.0, 0.0, 0u64);
        for (&z, &wz) in radial.nodes.iter().zip(&radial.weights) {
            let rho = r0 + h * (1.0 + z) / 2.0;
            let jac = area * h * wz * rho.powi(dim as i32 - 1);
            for (omega, wa) in sphere.iter() {
                for k in 0..dim {
                    y[k] = center[k] + rho * omega[k];
                }
                let v = f(&y)?;
                sum += jac * wa * v;
                abs += jac * wa * v.abs();
                evals += 1;
            }
        }
        Ok((sum, abs, evals))
    })
}

/// `∫_{|y - c| = r} f dσ` over a sphere in `ℝ^dim`.
pub fn integrate_sphere(
    mut f: impl FnMut(&[f64]) -> Result<f64>,
    center: &[f64],
    r: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    let dim = center.len();
    if dim == 0 || !(r > 0.0) {
        return domain("sphere integral needs dimension >= 1 and radius > 0");
    }
    let scale = crate::lift::sphere_area(dim)? * r.powi(dim as i32 - 1);
    refine("sphere quadrature", spec, |s| {
        let sphere = rules::sphere_rule(dim, s.angular_rule, s.angular_nodes * 2)?;
        let mut y = vec![0.0; dim];
        let (mut sum, mut abs) = (0.0, 0.0);
        for (omega, wa) in sphere.iter() {
            for k in 0..dim {
                y[k] = center[k] + r * omega[k];
            }
            let v = f(&y)?;
            sum += scale * wa * v;
            abs += scale * wa * v.abs();
        }
        Ok((sum, abs, sphere.len() as u64))
    })
}

#[allow(dead_code)]
pub(crate) fn require_low_dim(dim: usize) -> Result<()> {
    if dim > rules::MAX_SPHERE_DIM {
        return unsupported(format!(
            "deterministic quadrature is limited to dimension {}, got {dim}",
            rules::MAX_SPHERE_DIM
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{finite_weight, gaussian_weight};
    use approx::assert_relative_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn gaussian_moments() {
        for d in 1..=3 {
            let t = 0.7;
            let one = integrate_weighted(|_| Ok(1.0), Weight::Gaussian, d, t, &spec()).unwrap();
            assert_relative_eq!(one.value, 1.0, max_relative = 1e-13);
            let m2 = integrate_weighted(|x| Ok(x[0] * x[0]), Weight::Gaussian, d, t, &spec()).unwrap();
            assert_relative_eq!(m2.value, 2.0 * t, max_relative = 1e-13);
            let m4 = integrate_weighted(|x| Ok(x[0].powi(4)), Weight::Gaussian, d, t, &spec()).unwrap();
            assert_relative_eq!(m4.value, 12.0 * t * t, max_relative = 1e-13);
        }
    }

    // Fourth moment of x₁ under the push-forward law, from the independent
    // representation x₁ = Σ_j y_{1j} with y uniform on a sphere:
    // E[x₁⁴] = 3 (2t)² · nd / (nd + 2).
    #[test]
    fn finite_moments() {
        for d in 1..=3 {
            for n in [1usize, 2, 3, 5, 20] {
                let t = 1.3;
                let nd = (n * d) as f64;
                let w = Weight::Finite { n };
                let one = integrate_weighted(|_| Ok(1.0), w, d, t, &spec()).unwrap();
                assert_relative_eq!(one.value, 1.0, max_relative = 1e-13);
                let m2 = integrate_weighted(|x| Ok(x[0] * x[0]), w, d, t, &spec()).unwrap();
                assert_relative_eq!(m2.value, 2.0 * t, max_relative = 1e-12);
                let m4 = integrate_weighted(|x| Ok(x[0].powi(4)), w, d, t, &spec()).unwrap();
                assert_relative_eq!(m4.value, 12.0 * t * t * nd / (nd + 2.0), max_relative = 1e-12);
            }
        }
    }

    // The pointwise density integrates to one against Lebesgue measure.
    // Substituting |x| = R sin θ removes the edge singularity, and the
    // angular factor is the sphere area.
    #[test]
    fn finite_weight_normalises_against_lebesgue() {
        let gl = rules::gauss_legendre(80).unwrap();
        for d in 1..=3 {
            for n in [2usize, 5, 20] {
                if !crate::weights::finite_weight_supported(d, n) {
                    continue;
                }
                let big_r = (2.0 * (n * d) as f64).sqrt();
                let area = crate::lift::sphere_area(d).unwrap();
                let half_pi = std::f64::consts::FRAC_PI_2;
                let total = gl.mean(|z| {
                    let th = half_pi * (1.0 + z) / 2.0;
                    let r = big_r * th.sin();
                    let mut x = vec![0.0; d];
                    x[0] = r;
                    let g = finite_weight(d, n, 1.0, &x).unwrap();
                    half_pi * area * g * r.powi(d as i32 - 1) * big_r * th.cos()
                });
                assert_relative_eq!(total, 1.0, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn gaussian_normalises_against_lebesgue() {
        for d in 1..=3 {
            let c = vec![0.0; d];
            let s = QuadratureSpec::default().with_nodes(64, 8, 8);
            let est = integrate_ball(|x| gaussian_weight(d, 0.5, x), &c, 0.0, 14.0, &s).unwrap();
            assert_relative_eq!(est.value, 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn spacetime_mass_and_power() {
        let e = integrate_spacetime(|_, _| Ok(1.0), Weight::Finite { n: 4 }, 2, 0.8, &spec()).unwrap();
        assert_relative_eq!(e.value, 0.8, max_relative = 1e-13);
        let e = integrate_spacetime_powered(|_, t| Ok(t), Weight::Gaussian, 1, 2.0, 30.0, &spec()).unwrap();
        // ∫_0^2 (t/2)^30 t dt = 4/32
        assert_relative_eq!(e.value, 4.0 / 32.0, max_relative = 1e-12);
    }

    #[test]
    fn sphere_surface_area() {
        let e = integrate_sphere(|_| Ok(1.0), &[0.0; 3], 2.0, &spec()).unwrap();
        assert_relative_eq!(e.value, 16.0 * std::f64::consts::PI, max_relative = 1e-13);
    }

    #[test]
    fn non_convergence_is_reported() {
        let s = QuadratureSpec::default().with_nodes(2, 2, 2).with_tol(1e-15);
        let r = integrate_ball(|y| Ok((y[0] > 0.3) as u8 as f64), &[0.0], 0.0, 1.0, &s);
        assert!(matches!(r, Err(Error::Accuracy { .. })));
    }

    #[test]
    fn bad_arguments() {
        assert!(integrate_weighted(|_| Ok(1.0), Weight::Gaussian, 1, 0.0, &spec()).is_err());
        assert!(integrate_weighted(|_| Ok(1.0), Weight::Finite { n: 0 }, 1, 1.0, &spec()).is_err());
        assert!(integrate_spacetime_window(|_, _| Ok(1.0), Weight::Gaussian, 1, 1.0, 0.5, &spec()).is_err());
    }
}
