//! Lifting maps between `ℝ^N`, `N = n·d`, and the space-time `ℝ^d × ℝ`.
//!
//! A point `y ∈ ℝ^N` is stored row-major as `n` blocks of `d` coordinates, so the
//! entry `y_{i,j}` (`i < d`, `j < n`) lives at index `i·n + j`. The maps are
//!
//! * `f(y)_i = Σ_j y_{i,j}`
//! * `F(y) = (f(y), |y|² / (2d))`
//!
//! and a function `u(x, t)` lifts to `v(y) = u(F(y))`.

use crate::error::{domain, Result};
use crate::fields::{rel_err, SpaceTimeField};
use statrs::function::gamma::ln_gamma;

/// Surface area `2π^{N/2} / Γ(N/2)` of the unit sphere `S^{N-1} ⊂ ℝ^N`.
///
/// `N = 1` gives the two-point sphere `S⁰` with area 2.
pub fn sphere_area(dim: usize) -> Result<f64> {
    if dim == 0 {
        return domain("sphere area needs dimension N >= 1");
    }
    Ok(ln_sphere_area(dim).exp())
}

/// Natural log of [`sphere_area`]; finite for every `N >= 1`.
pub fn ln_sphere_area(dim: usize) -> f64 {
    let h = dim as f64 / 2.0;
    std::f64::consts::LN_2 + h * std::f64::consts::PI.ln() - ln_gamma(h)
}

/// Block structure `N = n·d` of the lifted space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftConfig {
    pub d: usize,
    pub n: usize,
}

impl LiftConfig {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || n == 0 {
            return domain(format!("lift needs d >= 1 and n >= 1, got d={d}, n={n}"));
        }
        Ok(Self { d, n })
    }

    /// Total dimension `N = n·d`.
    pub fn big_n(&self) -> usize {
        self.n * self.d
    }

    fn check(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.big_n() {
            return domain(format!(
                "point has {} coordinates, expected n·d = {}",
                y.len(),
                self.big_n()
            ));
        }
        Ok(())
    }
}

/// A point of `ℝ^{n·d}` together with its block structure.
#[derive(Debug, Clone, PartialEq)]
pub struct HighDimPoint {
    pub config: LiftConfig,
    pub coords: Vec<f64>,
}

impl HighDimPoint {
    pub fn new(config: LiftConfig, coords: Vec<f64>) -> Result<Self> {
        config.check(&coords)?;
        Ok(Self { config, coords })
    }

    /// Coordinate `y_{i,j}`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.coords[i * self.config.n + j]
    }
}

/// A point `(x, t)` of space-time.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimePoint {
    pub x: Vec<f64>,
    pub t: f64,
}

/// The four sets linked by the lift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainSpec {
    /// `S_t^n`: the sphere of radius `√(2dt)` in `ℝ^N`.
    Sphere { t: f64 },
    /// `B_{nt}`: the ball of radius `√(2ndt)` in `ℝ^d`.
    LowBall { t: f64 },
    /// `B_τ^n`: the ball of radius `√(2dτ)` in `ℝ^N`.
    HighBall { tau: f64 },
    /// `K_{nτ} = {(x, t) : |x|² ≤ 2ndt, t ≤ τ}`.
    Cone { tau: f64 },
}

/// Relative slack used by the membership tests.
pub const MEMBERSHIP_SLACK: f64 = 1e-12;

impl DomainSpec {
    /// Radius of the sphere or ball; for the cone, the radius of its top slice.
    pub fn radius(&self, cfg: LiftConfig) -> f64 {
        let (d, n) = (cfg.d as f64, cfg.n as f64);
        match *self {
            DomainSpec::Sphere { t } => (2.0 * d * t).sqrt(),
            DomainSpec::LowBall { t } => (2.0 * n * d * t).sqrt(),
            DomainSpec::HighBall { tau } => (2.0 * d * tau).sqrt(),
            DomainSpec::Cone { tau } => (2.0 * n * d * tau).sqrt(),
        }
    }

    /// Membership of a point of `ℝ^N` (sphere, high ball) or `ℝ^d` (low ball).
    /// Use [`DomainSpec::contains_spacetime`] for the cone.
    pub fn contains(&self, cfg: LiftConfig, p: &[f64]) -> bool {
        let r2 = self.radius(cfg).powi(2);
        let s = norm_sq(p);
        let slack = MEMBERSHIP_SLACK * r2.max(f64::MIN_POSITIVE);
        match self {
            DomainSpec::Sphere { .. } => (s - r2).abs() <= slack,
            DomainSpec::LowBall { .. } | DomainSpec::HighBall { .. } => s <= r2 + slack,
            DomainSpec::Cone { .. } => false,
        }
    }

    /// Cone membership of `(x, t)`; false for the other variants.
    pub fn contains_spacetime(&self, cfg: LiftConfig, x: &[f64], t: f64) -> bool {
        match *self {
            DomainSpec::Cone { tau } => {
                let bound = 2.0 * cfg.big_n() as f64 * t;
                t >= 0.0
                    && t <= tau * (1.0 + MEMBERSHIP_SLACK)
                    && norm_sq(x) <= bound + MEMBERSHIP_SLACK * bound.abs()
            }
            _ => false,
        }
    }
}

pub(crate) fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// `f(y)`: the sum of each block of `n` coordinates.
pub fn lift_point(cfg: LiftConfig, y: &[f64]) -> Result<Vec<f64>> {
    cfg.check(y)?;
    Ok(y.chunks(cfg.n).map(|row| row.iter().sum()).collect())
}

/// `F(y) = (f(y), |y|²/(2d))`.
pub fn lift_point_time(cfg: LiftConfig, y: &[f64]) -> Result<SpaceTimePoint> {
    let x = lift_point(cfg, y)?;
    Ok(SpaceTimePoint {
        x,
        t: norm_sq(y) / (2.0 * cfg.d as f64),
    })
}

/// Derivatives of the lifted function `v = u ∘ F` at a point `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedDerivatives {
    pub value: f64,
    /// `∂v/∂y_{ij} = ∂u/∂x_i + (y_{ij}/d) ∂_t u`, same layout as `y`.
    pub gradient: Vec<f64>,
    /// `n(Δu + ∂_t u) + (2/d)(x·∇∂_t u + t ∂_t² u)`.
    pub laplacian: f64,
    /// `y·∇v = x·∇u + 2t ∂_t u`.
    pub radial: f64,
    /// `|∇v|² = n|∇u|² + (2/d)(x·∇u + t ∂_t u) ∂_t u`.
    pub grad_sq: f64,
}

/// Evaluate `v = u ∘ F` and its derivatives through the chain rule.
pub fn lifted_derivatives(
    cfg: LiftConfig,
    u: &dyn SpaceTimeField,
    y: &[f64],
) -> Result<LiftedDerivatives> {
    let p = lift_point_time(cfg, y)?;
    if p.t <= 0.0 {
        return domain("lifted derivatives are undefined at y = 0");
    }
    let jet = u.jet(&p.x, p.t)?;
    let (d, n) = (cfg.d as f64, cfg.n as f64);
    let t = p.t;

    let mut gradient = Vec::with_capacity(y.len());
    for (i, row) in y.chunks(cfg.n).enumerate() {
        for &yij in row {
            gradient.push(jet.gradient[i] + yij / d * jet.dt);
        }
    }
    let x_grad = dot(&p.x, &jet.gradient);
    let x_grad_dt = dot(&p.x, &jet.grad_dt);
    Ok(LiftedDerivatives {
        value: jet.value,
        gradient,
        laplacian: n * (jet.laplacian + jet.dt) + 2.0 / d * (x_grad_dt + t * jet.dtt),
        radial: x_grad + 2.0 * t * jet.dt,
        grad_sq: n * norm_sq(&jet.gradient) + 2.0 / d * (x_grad + t * jet.dt) * jet.dt,
    })
}

/// Largest relative discrepancy between [`lifted_derivatives`] and central
/// differences of the composition `u ∘ F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainRuleCheck {
    /// Over the gradient, `y·∇v` and `|∇v|²`.
    pub max_first_order: f64,
    pub max_laplacian: f64,
    pub points: usize,
}

/// Check the four chain-rule identities at each `y` against differences of
/// `y ↦ u(F(y))` with steps `1e-5` (first order) and `1e-4` (Laplacian).
pub fn chain_rule_check(cfg: LiftConfig, u: &dyn SpaceTimeField, points: &[Vec<f64>]) -> Result<ChainRuleCheck> {
    let v = |y: &[f64]| -> Result<f64> {
        let p = lift_point_time(cfg, y)?;
        u.value(&p.x, p.t)
    };
    let mut out = ChainRuleCheck { max_first_order: 0.0, max_laplacian: 0.0, points: 0 };
    for y in points {
        let ld = lifted_derivatives(cfg, u, y)?;
        let mut p = y.clone();
        let mut grad = vec![0.0; y.len()];
        let mut lap = 0.0;
        for k in 0..y.len() {
            let h = 1e-5;
            p[k] = y[k] + h;
            let fp = v(&p)?;
            p[k] = y[k] - h;
            let fm = v(&p)?;
            grad[k] = (fp - fm) / (2.0 * h);
            let h2 = 1e-4;
            p[k] = y[k] + h2;
            let fp = v(&p)?;
            p[k] = y[k] - h2;
            let fm = v(&p)?;
            lap += (fp - 2.0 * ld.value + fm) / (h2 * h2);
            p[k] = y[k];
        }
        let mut worst = 0.0f64;
        for (a, b) in grad.iter().zip(&ld.gradient) {
            worst = worst.max(rel_err(*a, *b, ld.value));
        }
        worst = worst.max(rel_err(dot(y, &grad), ld.radial, ld.value));
        worst = worst.max(rel_err(norm_sq(&grad), ld.grad_sq, ld.value));
        out.max_first_order = out.max_first_order.max(worst);
        out.max_laplacian = out.max_laplacian.max(rel_err(lap, ld.laplacian, ld.value));
        out.points += 1;
    }
    Ok(out)
}
