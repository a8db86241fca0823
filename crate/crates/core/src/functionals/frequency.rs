//! Almgren's frequency `r D/H` for functions on `ℝ^N`, Poon's frequency
//! `t𝒟/ℋ` for `u(x, t)`, and the lifted frequency linking the two.

use super::{ratio, require_lift};
use crate::error::Result;
use crate::fields::{NonhomTerm, ScalarField, SpaceTimeField};
use crate::integrate::{
    integrate_ball, integrate_spacetime_powered, integrate_sphere, integrate_weighted, QuadratureSpec, Weight,
};
use crate::lift::{dot, norm_sq, LiftConfig};

/// A height, an energy and their frequency ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyValues {
    pub h: f64,
    pub d: f64,
    pub l: f64,
}

/// `H = ∫_{∂B_r} v²`, `D = ∫_{B_r} |∇v|²`, `L = rD/H` in `ℝ^dim`.
pub fn almgren(v: &dyn ScalarField, dim: usize, r: f64, spec: &QuadratureSpec) -> Result<FrequencyValues> {
    let c = vec![0.0; dim];
    let h = integrate_sphere(|y| Ok(v.value(y)?.powi(2)), &c, r, spec)?.value;
    let d = integrate_ball(|y| Ok(norm_sq(&v.jet(y)?.gradient)), &c, 0.0, r, spec)?.value;
    Ok(FrequencyValues { h, d, l: ratio(r * d, h, "Almgren frequency")? })
}

/// Boundary and bulk integrals entering `L'(r)` when `Δv = h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlmgrenTerms {
    pub h: f64,
    /// `∫_{∂B_r} v (y·∇v)`
    pub i: f64,
    /// `∫_{∂B_r} (y·∇v)²`
    pub p: f64,
    /// `∫_{B_r} h v`
    pub j: f64,
    /// `∫_{B_r} h (y·∇v)`
    pub k: f64,
}

impl AlmgrenTerms {
    /// The lower bound `2IJ/H² - 2K/H` for `L'(r)`.
    pub fn lower_bound(&self) -> f64 {
        2.0 * self.i * self.j / (self.h * self.h) - 2.0 * self.k / self.h
    }

    /// `L'(r) = (2/r)(PH - I²)/H² + 2IJ/H² - 2K/H`.
    pub fn derivative(&self, r: f64) -> f64 {
        2.0 / r * (self.p * self.h - self.i * self.i) / (self.h * self.h) + self.lower_bound()
    }
}

pub fn almgren_terms(
    v: &dyn ScalarField,
    h: &NonhomTerm,
    dim: usize,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<AlmgrenTerms> {
    let c = vec![0.0; dim];
    let hh = integrate_sphere(|y| Ok(v.value(y)?.powi(2)), &c, r, spec)?.value;
    ratio(1.0, hh, "Almgren height")?;
    let i = integrate_sphere(|y| { let j = v.jet(y)?; Ok(j.value * dot(y, &j.gradient)) }, &c, r, spec)?.value;
    let p = integrate_sphere(|y| Ok(dot(y, &v.jet(y)?.gradient).powi(2)), &c, r, spec)?.value;
    let j = integrate_ball(|y| Ok(h.eval_scalar(y)? * v.value(y)?), &c, 0.0, r, spec)?.value;
    let k = integrate_ball(|y| Ok(h.eval_scalar(y)? * dot(y, &v.jet(y)?.gradient)), &c, 0.0, r, spec)?.value;
    Ok(AlmgrenTerms { h: hh, i, p, j, k })
}

/// `2(∫_{∂B_r} v y·∇v)(∫_{B_r} h v)/H² - 2(∫_{B_r} h y·∇v)/H` for `Δv = h`.
pub fn almgren_dl_lower_bound(
    v: &dyn ScalarField,
    h: &NonhomTerm,
    dim: usize,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(almgren_terms(v, h, dim, r, spec)?.lower_bound())
}

/// `ℋ = ∫ u² G_t`, `𝒟 = ∫ |∇u|² G_t`, `𝓛 = t𝒟/ℋ`.
pub fn poon(u: &dyn SpaceTimeField, d: usize, t: f64, spec: &QuadratureSpec) -> Result<FrequencyValues> {
    let h = integrate_weighted(|x| Ok(u.value(x, t)?.powi(2)), Weight::Gaussian, d, t, spec)?.value;
    let dd = integrate_weighted(|x| Ok(norm_sq(&u.jet(x, t)?.gradient)), Weight::Gaussian, d, t, spec)?.value;
    Ok(FrequencyValues { h, d: dd, l: ratio(t * dd, h, "Poon frequency")? })
}

/// Almgren's frequency of the lift `v = u ∘ F` on the ball `B_t^n`, written
/// in `(x, t)`:
///
/// `[∫ u (x·∇u + 2t∂_t u) G_{t,n} - 2∫_0^t ∫ ((x,τ)·∇∂_τ u) u (τ/t)^{(nd-2)/2} G_{τ,n}] / ∫ u² G_{t,n}`.
///
/// It tends to `2𝓛(t)` as `n → ∞`.
pub fn lifted_frequency(u: &dyn SpaceTimeField, cfg: LiftConfig, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    require_lift(cfg)?;
    let w = Weight::Finite { n: cfg.n };
    let d = cfg.d;
    let den = integrate_weighted(|x| Ok(u.value(x, t)?.powi(2)), w, d, t, spec)?.value;
    let first = integrate_weighted(
        |x| {
            let j = u.jet(x, t)?;
            Ok(j.value * (dot(x, &j.gradient) + 2.0 * t * j.dt))
        },
        w,
        d,
        t,
        spec,
    )?
    .value;
    let p = (cfg.big_n() as f64 - 2.0) / 2.0;
    let second = integrate_spacetime_powered(
        |x, tau| {
            let j = u.jet(x, tau)?;
            Ok((dot(x, &j.grad_dt) + tau * j.dtt) * j.value)
        },
        w,
        d,
        t,
        p,
        spec,
    )?
    .value;
    ratio(first - 2.0 * second, den, "lifted frequency")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{
        caloric_polynomial, harmonic_polynomial, heat_kernel_translate, quadratic, CaloricKind, HarmonicKind,
    };
    use approx::assert_relative_eq;

    #[test]
    fn almgren_equals_degree() {
        let spec = QuadratureSpec::default();
        for (kind, deg, dim) in [
            (HarmonicKind::X1, 1.0, 3),
            (HarmonicKind::X1X2, 2.0, 3),
            (HarmonicKind::ReZk(3), 3.0, 2),
            (HarmonicKind::ReZk(4), 4.0, 3),
        ] {
            for r in [0.5, 1.0, 2.0] {
                let f = almgren(&harmonic_polynomial(kind), dim, r, &spec).unwrap();
                assert_relative_eq!(f.l, deg, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn poon_equals_half_degree() {
        let spec = QuadratureSpec::default();
        for d in 1..=3 {
            for kind in [CaloricKind::X1, CaloricKind::X1Sq, CaloricKind::X1Cube, CaloricKind::Radial] {
                let u = caloric_polynomial(kind);
                for t in [0.3, 1.0, 2.5] {
                    let f = poon(&u, d, t, &spec).unwrap();
                    assert_relative_eq!(f.l, u.frequency(), max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn lifted_frequency_is_exact_for_homogeneous_fields() {
        let spec = QuadratureSpec::default();
        let u = caloric_polynomial(CaloricKind::X1Sq);
        for n in [3, 10, 100] {
            let cfg = LiftConfig::new(1, n).unwrap();
            assert_relative_eq!(lifted_frequency(&u, cfg, 1.0, &spec).unwrap(), 2.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn lifted_frequency_converges_for_heat_kernel() {
        let spec = QuadratureSpec::default();
        let u = heat_kernel_translate(vec![0.5], 2.0).unwrap();
        let target = 2.0 * poon(&u, 1, 1.0, &spec).unwrap().l;
        let errs: Vec<f64> = [10, 40, 160]
            .iter()
            .map(|&n| (lifted_frequency(&u, LiftConfig::new(1, n).unwrap(), 1.0, &spec).unwrap() - target).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        assert!(errs[2] < 0.05 * target.abs());
    }

    // v = y₁ + c y₂²/2 has Δv = c.
    #[test]
    fn nonhomogeneous_identities() {
        let spec = QuadratureSpec::default();
        let c = 0.7;
        let v = quadratic(2, &[0.0, 0.0, 0.0, c], &[1.0, 0.0], 0.0).unwrap();
        let h = NonhomTerm::Constant(c);
        let r = 1.2;
        let t = almgren_terms(&v, &h, 2, r, &spec).unwrap();
        let f = almgren(&v, 2, r, &spec).unwrap();
        // D = I/r - J
        assert_relative_eq!(f.d, t.i / r - t.j, max_relative = 1e-10);
        let dr = 1e-4;
        let lp = almgren(&v, 2, r + dr, &spec).unwrap().l;
        let lm = almgren(&v, 2, r - dr, &spec).unwrap().l;
        let fd = (lp - lm) / (2.0 * dr);
        assert!((fd - t.derivative(r)).abs() < 1e-6, "{fd} vs {}", t.derivative(r));
        assert!(fd >= t.lower_bound() - 1e-6);
    }

    #[test]
    fn zero_height_is_degenerate() {
        let v = quadratic(2, &[0.0; 4], &[0.0, 0.0], 0.0).unwrap();
        let r = almgren(&v, 2, 1.0, &QuadratureSpec::default());
        assert!(matches!(r, Err(crate::Error::Degenerate { .. })));
    }
}
