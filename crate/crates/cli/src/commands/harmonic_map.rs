use super::{grid, list, record_decreasing, record_sweep, CliResult, SWEEP_TOL};
use crate::grid::Spacing;
use crate::report::Outcome;
use crate::row;
use clap::Args;
use dimlift::fields::{
    circle_map, equator_map, harmonic_phase, harmonic_polynomial, quadratic, HarmonicKind, NonhomTerm, ScalarField,
};
use dimlift::functionals::{hm_dphi_lower_bound, hm_phi, lifted_hm_phi, monotonicity_sweep, struwe_phi, Tolerance};
use dimlift::integrate::QuadratureSpec;
use dimlift::LiftConfig;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Args, Serialize)]
pub struct HarmonicMapArgs {
    #[arg(long, default_value = "0.25:4:16")]
    pub r_grid: String,
    #[arg(long, default_value = "0.1:10:16")]
    pub t_grid: String,
    #[arg(long, default_value = "10,40,160")]
    pub n: String,
    /// Curvature ε of the phase y₁ + εy₁²/2 in the inhomogeneous case.
    #[arg(long, default_value_t = 0.4)]
    pub eps: f64,
}

fn fd_slope(f: impl Fn(f64) -> dimlift::Result<f64>, r: f64) -> dimlift::Result<f64> {
    let h = 1e-4;
    Ok((f(r + h)? - f(r - h)?) / (2.0 * h))
}

impl HarmonicMapArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let spec = QuadratureSpec::default();
        let mut out = Outcome::new(vec!["check", "param", "value", "expected", "abs_error"]);

        let rs = grid(&self.r_grid, Spacing::Linear)?;
        for (dim, want) in [(3usize, 8.0 * PI), (4, 3.0 * PI * PI)] {
            let v = equator_map(dim)?;
            let c = vec![0.0; dim];
            let rep = monotonicity_sweep(|r| hm_phi(&v, &c, r, &spec), &rs, Tolerance::Relative(SWEEP_TOL))?;
            for (&r, &val) in rs.iter().zip(&rep.values) {
                out.error(format!("equator map N={dim} at r={r}"), (val - want).abs(), 1e-6);
                out.push(row![format!("hm_phi equator N={dim}"), r, val, want, (val - want).abs()]);
            }
            record_sweep(&mut out, &format!("equator map N={dim}"), &rep);
        }

        // Radial source against the equator map: the bound vanishes.
        let eq = equator_map(3)?;
        for r in [0.5, 1.0, 2.0] {
            let b = hm_dphi_lower_bound(&eq, &NonhomTerm::RadialUnit, &[0.0; 3], r, &spec)?;
            let fd = fd_slope(|s| hm_phi(&eq, &[0.0; 3], s, &spec), r)?;
            out.error(format!("radial source bound at r={r}"), b.abs(), 1e-8);
            out.violation(format!("equator map φ' = {fd} below bound {b}"), (b - 1e-4 - fd).max(0.0));
            out.push(row!["hm_dphi radial source (value = fd slope, expected = bound)", r, fd, b, f64::NAN]);
        }

        // (cos f, sin f) with f = y₁ + εy₁²/2 solves the equation with H = ε(sin f, -cos f).
        let eps = self.eps;
        let f = Arc::new(quadratic(2, &[eps, 0.0, 0.0, 0.0], &[1.0, 0.0], 0.0)?);
        let v = harmonic_phase(f.clone(), 1.0);
        let h = NonhomTerm::vector(move |y| {
            let p = f.value(y).unwrap_or(f64::NAN);
            vec![eps * p.sin(), -eps * p.cos()]
        });
        for r in [0.5, 0.9, 1.3] {
            let b = hm_dphi_lower_bound(&v, &h, &[0.0; 2], r, &spec)?;
            let fd = fd_slope(|s| hm_phi(&v, &[0.0; 2], s, &spec), r)?;
            out.violation(format!("phase map φ' = {fd} below bound {b} at r={r}"), (b - 1e-4 - fd).max(0.0));
            out.push(row!["hm_dphi phase map (value = fd slope, expected = bound)", r, fd, b, f64::NAN]);
        }

        let ts = grid(&self.t_grid, Spacing::Geometric)?;
        let circle = circle_map(1.0);
        let rep = monotonicity_sweep(|t| struwe_phi(&circle, 1, t, &spec), &ts, Tolerance::Relative(SWEEP_TOL))?;
        for (&t, &val) in ts.iter().zip(&rep.values) {
            out.error(format!("circle map Φ at t={t}"), (val - t).abs() / t, 1e-8);
            out.push(row!["struwe_phi circle", t, val, t, (val - t).abs()]);
        }
        record_sweep(&mut out, "circle map Φ", &rep);

        let ns: Vec<usize> = list(&self.n)?;
        for &n in &ns {
            let val = lifted_hm_phi(&circle, LiftConfig::new(1, n)?, 1.0, &spec)?;
            out.error(format!("lifted circle map at n={n}"), (val - 1.0).abs(), 0.05);
            out.push(row!["lifted_hm_phi circle", n, val, 1.0, (val - 1.0).abs()]);
        }

        // (cos x₁x₂, sin x₁x₂) has Φ(t) = 4t².
        let u = harmonic_phase(Arc::new(harmonic_polynomial(HarmonicKind::X1X2)), 1.0);
        let t = 0.5;
        let target = struwe_phi(&u, 2, t, &spec)?;
        out.error("phase map x1x2 Φ(0.5)", (target - 4.0 * t * t).abs(), 1e-8);
        let mut errs = Vec::new();
        for &n in &ns {
            let val = lifted_hm_phi(&u, LiftConfig::new(2, n)?, t, &spec)?;
            errs.push((val - target).abs());
            out.push(row!["lifted_hm_phi phase x1x2", n, val, target, (val - target).abs()]);
        }
        record_decreasing(&mut out, "lifted phase map", &errs);
        Ok(out)
    }
}
