//! Weighted `L²` inequalities for functions supported away from the origin
//! (elliptic) or away from `t = 0` (parabolic).

use crate::error::{domain, Error, Result};
use crate::fields::{ScalarField, SpaceTimeField};
use crate::integrate::{integrate_ball, rules, QuadratureSpec};
use crate::lift::norm_sq;

/// Both sides of a Carleman inequality `rhs ≤ lhs` (elliptic) or
/// `lhs ≤ rhs` (parabolic), with the constant used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlemanReport {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub satisfied: bool,
}

/// Relative slack allowed when comparing the two sides.
const SLACK: f64 = 1e-9;

/// `c(γ, N) = inf_{ℓ ∈ ℕ} |(N/2 + ℓ + γ - 2)(N/2 + ℓ - γ)|`.
///
/// The product is a quadratic in `ℓ` with roots `2 - N/2 - γ` and `γ - N/2`,
/// so the infimum is attained at or below the first integer past both roots.
pub fn carleman_elliptic_constant(gamma: f64, dim: usize) -> f64 {
    let h = dim as f64 / 2.0;
    let a = h + gamma - 2.0;
    let b = h - gamma;
    let last = (-a).max(-b).max(0.0).ceil() as u64 + 1;
    (0..=last)
        .map(|l| ((a + l as f64) * (b + l as f64)).abs())
        .fold(f64::INFINITY, f64::min)
}

/// `‖|y|^{2-γ} Δv‖ ≥ c(γ, N) ‖|y|^{-γ} v‖` for `v` supported in the shell
/// `support.0 < |y| < support.1` of `ℝ^dim`.
pub fn carleman_elliptic_check(
    v: &dyn ScalarField,
    dim: usize,
    gamma: f64,
    support: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<CarlemanReport> {
    let (r0, r1) = support;
    if !(r0 > 0.0 && r1 > r0) {
        return domain("elliptic Carleman check needs a support shell 0 < r_in < r_out");
    }
    let c = vec![0.0; dim];
    let lap = integrate_ball(
        |y| {
            let j = v.jet(y)?;
            Ok(norm_sq(y).powf(2.0 - gamma) * j.laplacian().powi(2))
        },
        &c,
        r0,
        r1,
        spec,
    )?
    .value;
    let val = integrate_ball(|y| Ok(norm_sq(y).powf(-gamma) * v.value(y)?.powi(2)), &c, r0, r1, spec)?.value;
    let constant = carleman_elliptic_constant(gamma, dim);
    let lhs = lap.sqrt();
    let rhs = constant * val.sqrt();
    Ok(CarlemanReport { lhs, rhs, constant, satisfied: rhs <= lhs * (1.0 + SLACK) })
}

/// `β = 2α - d/2 - 1` and its distance to `ℕ`.
fn beta_eps(alpha: f64, d: usize) -> Result<(f64, f64)> {
    let beta = 2.0 * alpha - d as f64 / 2.0 - 1.0;
    if !(beta > 0.0) {
        return domain(format!("need 2α - d/2 - 1 > 0, got {beta} for α = {alpha}, d = {d}"));
    }
    let eps = (beta - beta.round()).abs();
    if eps == 0.0 {
        return domain(format!("2α - d/2 - 1 = {beta} must not be an integer"));
    }
    Ok((beta, eps))
}

/// `∫∫ t^{-2α} e^{-|x|²/4t} u² ≤ (8/ε²) ∫∫ t^{2-2α} e^{-|x|²/4t} |Δu + ∂_t u|²`
/// for `u` supported in `support.0 < |x| < support.1`, `window.0 < t < window.1`.
pub fn carleman_parabolic_check(
    u: &dyn SpaceTimeField,
    d: usize,
    alpha: f64,
    support: (f64, f64),
    window: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<CarlemanReport> {
    let (_, eps) = beta_eps(alpha, d)?;
    let (r0, r1) = support;
    let (t0, t1) = window;
    if !(r0 >= 0.0 && r1 > r0 && t0 > 0.0 && t1 > t0) {
        return domain("parabolic Carleman check needs 0 <= r_in < r_out and 0 < t_in < t_out");
    }
    let c = vec![0.0; d];
    let mut pair = [0.0; 2];
    for (k, slot) in pair.iter_mut().enumerate() {
        *slot = spacetime_shell(
            |x, t| {
                let gauss = (-norm_sq(x) / (4.0 * t)).exp();
                let j = u.jet(x, t)?;
                Ok(if k == 0 {
                    t.powf(-2.0 * alpha) * gauss * j.value.powi(2)
                } else {
                    t.powf(2.0 - 2.0 * alpha) * gauss * j.heat_residual().powi(2)
                })
            },
            &c,
            (r0, r1),
            (t0, t1),
            spec,
        )?;
    }
    let constant = 8.0 / (eps * eps);
    let lhs = pair[0];
    let rhs = constant * pair[1];
    Ok(CarlemanReport { lhs, rhs, constant, satisfied: lhs <= rhs * (1.0 + SLACK) })
}

/// Gauss–Legendre in time over the window, shell quadrature in space.
fn spacetime_shell(
    f: impl Fn(&[f64], f64) -> Result<f64>,
    c: &[f64],
    (r0, r1): (f64, f64),
    (t0, t1): (f64, f64),
    spec: &QuadratureSpec,
) -> Result<f64> {
    let once = |s: &QuadratureSpec| -> Result<f64> {
        let rule = rules::gauss_legendre(s.time_nodes)?;
        let inner = QuadratureSpec { max_doublings: 0, ..*s };
        let mut sum = 0.0;
        for (&z, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = t0 + (t1 - t0) * (1.0 + z) / 2.0;
            sum += w * (t1 - t0) * integrate_ball(|x| f(x, t), c, r0, r1, &inner)?.value;
        }
        Ok(sum)
    };
    let mut prev = once(spec)?;
    for k in 1..=spec.max_doublings.max(1) {
        let f = 1usize << k;
        let next = once(&QuadratureSpec {
            radial_nodes: f * spec.radial_nodes,
            angular_nodes: f * spec.angular_nodes,
            time_nodes: f * spec.time_nodes,
            ..*spec
        })?;
        if (next - prev).abs() <= spec.target_rel_tol * next.abs() {
            return Ok(next);
        }
        if k >= spec.max_doublings {
            return Err(Error::Accuracy { what: "Carleman space-time integral".into(), last: next, previous: prev });
        }
        prev = next;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{bump_spacetime, radial_bump};

    fn brute(gamma: f64, dim: usize) -> f64 {
        let h = dim as f64 / 2.0;
        (0..10_000)
            .map(|l| ((h + l as f64 + gamma - 2.0) * (h + l as f64 - gamma)).abs())
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn constant_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let g = rng.gen_range(-20.0..20.0);
            let n = rng.gen_range(2..40);
            assert_eq!(carleman_elliptic_constant(g, n), brute(g, n));
        }
    }

    #[test]
    fn constant_examples() {
        // N = 3, γ = 0.5: ℓ = 0 gives |0·1| = 0
        assert_eq!(carleman_elliptic_constant(0.5, 3), 0.0);
        // N = 3, γ = 0.25: min(|(-0.25)(1.25)|, |(0.75)(2.25)|) = 0.3125
        assert!((carleman_elliptic_constant(0.25, 3) - 0.3125).abs() < 1e-15);
    }

    #[test]
    fn elliptic_inequality_for_bumps() {
        let spec = QuadratureSpec::default();
        for b in [radial_bump(1.0, 2.0, 3, 0.0).unwrap(), radial_bump(0.5, 2.5, 4, 0.4).unwrap()] {
            for g in [0.25, 1.3, -0.7] {
                let rep = carleman_elliptic_check(&b, 3, g, (b.profile.a, b.profile.b), &spec).unwrap();
                assert!(rep.satisfied, "{rep:?}");
            }
        }
    }

    #[test]
    fn parabolic_inequality_for_bumps() {
        let spec = QuadratureSpec::default();
        let u = bump_spacetime(1.0, 2.0, 1.0, 2.0, 3, 0.0).unwrap();
        for alpha in [1.0, 1.4, 2.1] {
            let rep = carleman_parabolic_check(&u, 1, alpha, (1.0, 2.0), (1.0, 2.0), &spec).unwrap();
            assert!(rep.satisfied, "{rep:?}");
        }
    }

    #[test]
    fn integer_beta_is_rejected() {
        let u = bump_spacetime(1.0, 2.0, 1.0, 2.0, 3, 0.0).unwrap();
        // d = 2: β = 2α - 2 = 1 at α = 1.5
        let r = carleman_parabolic_check(&u, 2, 1.5, (1.0, 2.0), (1.0, 2.0), &QuadratureSpec::default());
        assert!(matches!(r, Err(crate::Error::Domain(_))));
    }
}
