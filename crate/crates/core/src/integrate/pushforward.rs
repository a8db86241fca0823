//! Two independent routes to the same number: Monte Carlo on the lifted
//! sphere or ball in `ℝ^N`, and deterministic quadrature against the weight in
//! `ℝ^d`. The identities checked are
//!
//! * `⨍_{S_t^n} φ(f(y)) dσ = ∫ φ G_{t,n} dx`
//! * `∫_{B_τ^n} φ(F(y)) dμ = ∫_0^τ ∫ φ G_{t,n} dx dt`

use super::sampling::{draw_mu_ball, draw_sphere, mc_means, MonteCarloSpec};
use super::{integrate_spacetime, integrate_weighted, IntegralEstimate, QuadratureSpec, Weight};
use crate::error::{domain, Result};
use crate::lift::{lift_point, lift_point_time, LiftConfig};

/// Both estimates and their discrepancy in Monte Carlo standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PushforwardReport {
    pub mc: IntegralEstimate,
    pub quad: IntegralEstimate,
    pub discrepancy: f64,
}

/// `|mc - quad| / std_error`, except that values agreeing to `1e-12`
/// relative count as a discrepancy of 0: an integrand that is constant on the
/// samples has a standard error made of rounding noise only. Disagreement with
/// a zero standard error is infinite.
pub fn discrepancy(mc: &IntegralEstimate, quad: &IntegralEstimate) -> f64 {
    let diff = (mc.value - quad.value).abs();
    if diff <= 1e-12 * quad.value.abs().max(1.0) {
        0.0
    } else if mc.std_error > 0.0 {
        diff / mc.std_error
    } else {
        f64::INFINITY
    }
}

fn report(mc: IntegralEstimate, quad: IntegralEstimate) -> PushforwardReport {
    PushforwardReport { discrepancy: discrepancy(&mc, &quad), mc, quad }
}

/// Sphere identity for one test function.
pub fn pushforward_check_sphere(
    phi: impl Fn(&[f64]) -> f64 + Sync,
    cfg: LiftConfig,
    t: f64,
    mc: &MonteCarloSpec,
    quad: &QuadratureSpec,
) -> Result<PushforwardReport> {
    Ok(pushforward_check_sphere_many(&[phi], cfg, t, mc, quad)?.remove(0))
}

/// Sphere identity for several test functions evaluated on the same draws.
pub fn pushforward_check_sphere_many<F>(
    phis: &[F],
    cfg: LiftConfig,
    t: f64,
    mc: &MonteCarloSpec,
    quad: &QuadratureSpec,
) -> Result<Vec<PushforwardReport>>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if !(t > 0.0) {
        return domain(format!("time must be positive, got {t}"));
    }
    let radius = (2.0 * cfg.d as f64 * t).sqrt();
    let lifted: Vec<_> = phis
        .iter()
        .map(|phi| move |y: &[f64]| Ok(phi(&lift_point(cfg, y)?)))
        .collect();
    let mcs = mc_means(cfg.big_n(), radius, mc, draw_sphere, &lifted)?;
    phis.iter()
        .zip(mcs)
        .map(|(phi, m)| {
            let q = integrate_weighted(|x| Ok(phi(x)), Weight::Finite { n: cfg.n }, cfg.d, t, quad)?;
            Ok(report(m, q))
        })
        .collect()
}

/// Ball identity for one space-time test function.
pub fn pushforward_check_ball(
    phi: impl Fn(&[f64], f64) -> f64 + Sync,
    cfg: LiftConfig,
    tau: f64,
    mc: &MonteCarloSpec,
    quad: &QuadratureSpec,
) -> Result<PushforwardReport> {
    Ok(pushforward_check_ball_many(&[phi], cfg, tau, mc, quad)?.remove(0))
}

/// Ball identity for several space-time test functions on the same draws.
pub fn pushforward_check_ball_many<F>(
    phis: &[F],
    cfg: LiftConfig,
    tau: f64,
    mc: &MonteCarloSpec,
    quad: &QuadratureSpec,
) -> Result<Vec<PushforwardReport>>
where
    F: Fn(&[f64], f64) -> f64 + Sync,
{
    if !(tau > 0.0) {
        return domain(format!("τ must be positive, got {tau}"));
    }
    let radius = (2.0 * cfg.d as f64 * tau).sqrt();
    let lifted: Vec<_> = phis
        .iter()
        .map(|phi| {
            move |y: &[f64]| {
                let p = lift_point_time(cfg, y)?;
                Ok(phi(&p.x, p.t))
            }
        })
        .collect();
    let mcs = mc_means(cfg.big_n(), radius, mc, draw_mu_ball, &lifted)?;
    phis.iter()
        .zip(mcs)
        .map(|(phi, m)| {
            // μ has total mass τ; the sampler draws from μ/τ.
            let m = IntegralEstimate { value: tau * m.value, std_error: tau * m.std_error, ..m };
            let q = integrate_spacetime(|x, t| Ok(phi(x, t)), Weight::Finite { n: cfg.n }, cfg.d, tau, quad)?;
            Ok(report(m, q))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_moment_on_sphere() {
        let cfg = LiftConfig::new(1, 4).unwrap();
        let r = pushforward_check_sphere(
            |x| x[0] * x[0],
            cfg,
            1.0,
            &MonteCarloSpec::new(7, 20000),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.quad.value - 2.0).abs() < 1e-12);
        assert!(r.discrepancy < 4.0, "{r:?}");
    }

    #[test]
    fn constant_on_ball_is_exact() {
        let cfg = LiftConfig::new(2, 3).unwrap();
        let r = pushforward_check_ball(
            |_, _| 1.0,
            cfg,
            0.5,
            &MonteCarloSpec::new(1, 1000),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_eq!(r.mc.std_error, 0.0);
        assert!((r.mc.value - 0.5).abs() < 1e-14);
        assert_eq!(r.discrepancy, 0.0);
    }
}
