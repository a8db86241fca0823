//! Test fields with closed-form derivatives: harmonic and caloric functions,
//! compactly supported bumps, sphere-valued maps, graphs and source terms.
//!
//! Space-time fields follow the backward convention `Δu + ∂_t u = 0` on
//! `t > 0`; their lifts `v = u ∘ F` are harmonic.

mod caloric;
mod elliptic;
mod graph;
mod nonhom;
mod sphere;

pub use caloric::{
    bump_spacetime, caloric_from_data, caloric_from_grid, caloric_polynomial, half_space_pair,
    heat_kernel_translate, CaloricKind, CaloricPolynomial, DataCaloric, HalfSpaceCaloric,
    HeatKernelTranslate, SpaceTimeBump,
};
pub use elliptic::{
    harmonic_polynomial, quadratic, radial_bump, HalfSpace, HarmonicKind, HarmonicPolynomial,
    Quadratic, RadialBump,
};
pub use graph::{graph_catalog, GraphKind, GraphSurface};
pub use nonhom::NonhomTerm;
pub use sphere::{circle_map, equator_map, harmonic_phase, EquatorMap, HarmonicPhase, SphereField, SphereJet};

use crate::error::{domain, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Value, gradient and Hessian (row-major) of a function on `ℝ^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarJet {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<f64>,
}

impl ScalarJet {
    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    pub fn laplacian(&self) -> f64 {
        let n = self.dim();
        (0..n).map(|i| self.hessian[i * n + i]).sum()
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hessian[i * self.dim() + j]
    }
}

/// A scalar function on `ℝ^N` with derivatives up to second order.
pub trait ScalarField: Send + Sync {
    fn jet(&self, y: &[f64]) -> Result<ScalarJet>;

    fn value(&self, y: &[f64]) -> Result<f64> {
        Ok(self.jet(y)?.value)
    }

    /// Whether `Δv = 0` identically.
    fn is_harmonic(&self) -> bool {
        false
    }

    fn name(&self) -> String;
}

/// The derivatives of `u(x, t)` used by the lift and the functionals.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeJet {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub dt: f64,
    pub laplacian: f64,
    /// `∇∂_t u`.
    pub grad_dt: Vec<f64>,
    pub dtt: f64,
}

impl SpaceTimeJet {
    /// `Δu + ∂_t u`.
    pub fn heat_residual(&self) -> f64 {
        self.laplacian + self.dt
    }
}

/// A function `u(x, t)` on `ℝ^d × (0, ∞)`.
pub trait SpaceTimeField: Send + Sync {
    fn jet(&self, x: &[f64], t: f64) -> Result<SpaceTimeJet>;

    fn value(&self, x: &[f64], t: f64) -> Result<f64> {
        Ok(self.jet(x, t)?.value)
    }

    /// Whether `Δu + ∂_t u = 0` identically.
    fn is_caloric(&self) -> bool {
        false
    }

    fn name(&self) -> String;
}

/// Largest discrepancy found by a finite-difference self-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldCheck {
    pub max_first_order: f64,
    pub max_second_order: f64,
    /// `max |Δu + ∂_t u|` (space-time) or `max |Δv|` (scalar).
    pub max_residual: f64,
    pub points: usize,
}

/// `|a - b| / max(|b|, 1 + |value|)`: relative, with a floor set by the size
/// of the field so that vanishing derivatives do not divide by zero.
pub fn rel_err(a: f64, b: f64, value: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0 + value.abs())
}

const FIRST_STEP: f64 = 1e-5;
const SECOND_STEP: f64 = 1e-4;

fn step(h: f64, c: f64) -> f64 {
    h * c.abs().max(1.0)
}

/// Compare the closed-form gradient and Laplacian of `v` with central
/// differences at the given points.
pub fn check_scalar_field(v: &dyn ScalarField, points: &[Vec<f64>]) -> Result<FieldCheck> {
    let mut out = FieldCheck { max_first_order: 0.0, max_second_order: 0.0, max_residual: 0.0, points: 0 };
    for y in points {
        let jet = v.jet(y)?;
        let mut lap = 0.0;
        let mut p = y.clone();
        for k in 0..y.len() {
            let h = step(FIRST_STEP, y[k]);
            p[k] = y[k] + h;
            let fp = v.value(&p)?;
            p[k] = y[k] - h;
            let fm = v.value(&p)?;
            let g = (fp - fm) / (2.0 * h);
            out.max_first_order = out.max_first_order.max(rel_err(g, jet.gradient[k], jet.value));
            let h2 = step(SECOND_STEP, y[k]);
            p[k] = y[k] + h2;
            let fp = v.value(&p)?;
            p[k] = y[k] - h2;
            let fm = v.value(&p)?;
            lap += (fp - 2.0 * jet.value + fm) / (h2 * h2);
            p[k] = y[k];
        }
        out.max_second_order = out.max_second_order.max(rel_err(lap, jet.laplacian(), jet.value));
        if v.is_harmonic() {
            out.max_residual = out.max_residual.max(jet.laplacian().abs());
        }
        out.points += 1;
    }
    Ok(out)
}

/// Compare every closed-form derivative of `u` with central differences.
pub fn check_spacetime_field(u: &dyn SpaceTimeField, points: &[(Vec<f64>, f64)]) -> Result<FieldCheck> {
    let mut out = FieldCheck { max_first_order: 0.0, max_second_order: 0.0, max_residual: 0.0, points: 0 };
    for (x, t) in points {
        let (x, t) = (x.as_slice(), *t);
        let jet = u.jet(x, t)?;
        let mut worst1 = 0.0f64;
        let mut worst2 = 0.0f64;
        let mut p = x.to_vec();
        let mut lap = 0.0;
        for k in 0..x.len() {
            let h = step(FIRST_STEP, x[k]);
            p[k] = x[k] + h;
            let jp = u.jet(&p, t)?;
            p[k] = x[k] - h;
            let jm = u.jet(&p, t)?;
            worst1 = worst1.max(rel_err((jp.value - jm.value) / (2.0 * h), jet.gradient[k], jet.value));
            worst1 = worst1.max(rel_err((jp.dt - jm.dt) / (2.0 * h), jet.grad_dt[k], jet.value));
            let h2 = step(SECOND_STEP, x[k]);
            p[k] = x[k] + h2;
            let fp = u.value(&p, t)?;
            p[k] = x[k] - h2;
            let fm = u.value(&p, t)?;
            lap += (fp - 2.0 * jet.value + fm) / (h2 * h2);
            p[k] = x[k];
        }
        let h = FIRST_STEP * t;
        let jp = u.jet(x, t + h)?;
        let jm = u.jet(x, t - h)?;
        worst1 = worst1.max(rel_err((jp.value - jm.value) / (2.0 * h), jet.dt, jet.value));
        worst1 = worst1.max(rel_err((jp.dt - jm.dt) / (2.0 * h), jet.dtt, jet.value));
        worst2 = worst2.max(rel_err(lap, jet.laplacian, jet.value));
        out.max_first_order = out.max_first_order.max(worst1);
        out.max_second_order = out.max_second_order.max(worst2);
        if u.is_caloric() {
            out.max_residual = out.max_residual.max(jet.heat_residual().abs());
        }
        out.points += 1;
    }
    Ok(out)
}

/// Reproducible random points in the box `[-half_width, half_width]^dim`.
pub fn random_points(dim: usize, half_width: f64, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if dim == 0 || !(half_width > 0.0) {
        return domain("random points need dim >= 1 and a positive half width");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(-half_width..half_width)).collect())
        .collect())
}

/// Reproducible random space-time points with `t ∈ [t0, t1]`.
pub fn random_spacetime_points(
    dim: usize,
    half_width: f64,
    t0: f64,
    t1: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<(Vec<f64>, f64)>> {
    if !(t0 > 0.0 && t1 > t0) {
        return domain("time range must satisfy 0 < t0 < t1");
    }
    let xs = random_points(dim, half_width, count, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    Ok(xs.into_iter().map(|x| (x, rng.gen_range(t0..t1))).collect())
}
