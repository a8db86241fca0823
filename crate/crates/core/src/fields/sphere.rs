use super::{HarmonicKind, ScalarField};
use crate::error::{domain, Result};
use crate::lift::norm_sq;
use std::sync::Arc;

/// Value and Jacobian of a map `ℝ^k → S^{m-1} ⊂ ℝ^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereJet {
    pub value: Vec<f64>,
    /// `∂_j v^i` at index `i·k + j`.
    pub jacobian: Vec<f64>,
    /// `Δv`, componentwise.
    pub laplacian: Vec<f64>,
}

impl SphereJet {
    /// `|Dv|²`.
    pub fn energy(&self) -> f64 {
        norm_sq(&self.jacobian)
    }

    /// `(w·∇) v` for a direction `w ∈ ℝ^k`.
    pub fn directional(&self, w: &[f64]) -> Vec<f64> {
        let k = w.len();
        self.jacobian.chunks(k).map(|row| crate::lift::dot(row, w)).collect()
    }

    /// Tension `Δv + |Dv|² v`: zero for harmonic maps.
    pub fn tension(&self) -> Vec<f64> {
        let e = self.energy();
        self.laplacian.iter().zip(&self.value).map(|(l, v)| l + e * v).collect()
    }
}

/// A time-independent sphere-valued map, used both on `ℝ^N` and on `ℝ^d`.
pub trait SphereField: Send + Sync {
    fn target_dim(&self) -> usize;
    fn jet(&self, y: &[f64]) -> Result<SphereJet>;
    fn name(&self) -> String;
}

/// `v(y) = y/|y|`, smooth away from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquatorMap {
    pub dim: usize,
}

pub fn equator_map(dim: usize) -> Result<EquatorMap> {
    if dim < 2 {
        return domain("equator map needs N >= 2");
    }
    Ok(EquatorMap { dim })
}

impl SphereField for EquatorMap {
    fn target_dim(&self) -> usize {
        self.dim
    }

    fn jet(&self, y: &[f64]) -> Result<SphereJet> {
        let n = self.dim;
        if y.len() != n {
            return domain(format!("equator map lives on ℝ^{n}"));
        }
        let r2 = norm_sq(y);
        if r2 == 0.0 {
            return domain("equator map is singular at the origin");
        }
        let r = r2.sqrt();
        let v: Vec<f64> = y.iter().map(|c| c / r).collect();
        let mut jac = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { 1.0 } else { 0.0 };
                jac[i * n + j] = (delta - v[i] * v[j]) / r;
            }
        }
        let lap = v.iter().map(|c| -(n as f64 - 1.0) * c / r2).collect();
        Ok(SphereJet { value: v, jacobian: jac, laplacian: lap })
    }

    fn name(&self) -> String {
        format!("equator_map(N={})", self.dim)
    }
}

/// `v = (cos λf, sin λf) ∈ S¹` for a scalar phase `f`. Harmonic exactly when
/// `f` is; the energy density is `λ²|∇f|²`.
#[derive(Clone)]
pub struct HarmonicPhase {
    pub phase: Arc<dyn ScalarField>,
    pub lambda: f64,
}

pub fn harmonic_phase(phase: Arc<dyn ScalarField>, lambda: f64) -> HarmonicPhase {
    HarmonicPhase { phase, lambda }
}

/// `(cos λx₁, sin λx₁)`, with `|Du|² = λ²`.
pub fn circle_map(lambda: f64) -> HarmonicPhase {
    harmonic_phase(Arc::new(super::harmonic_polynomial(HarmonicKind::X1)), lambda)
}

impl SphereField for HarmonicPhase {
    fn target_dim(&self) -> usize {
        2
    }

    fn jet(&self, y: &[f64]) -> Result<SphereJet> {
        let f = self.phase.jet(y)?;
        let l = self.lambda;
        let (s, c) = (l * f.value).sin_cos();
        let k = y.len();
        let mut jac = vec![0.0; 2 * k];
        for j in 0..k {
            jac[j] = -s * l * f.gradient[j];
            jac[k + j] = c * l * f.gradient[j];
        }
        let g2 = l * l * norm_sq(&f.gradient);
        let lf = l * f.laplacian();
        Ok(SphereJet {
            value: vec![c, s],
            jacobian: jac,
            laplacian: vec![-g2 * c - lf * s, -g2 * s + lf * c],
        })
    }

    fn name(&self) -> String {
        format!("phase({}, lambda={})", self.phase.name(), self.lambda)
    }
}
