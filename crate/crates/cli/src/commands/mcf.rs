use super::{grid, list, record_decreasing, record_sweep, CliResult, SWEEP_TOL};
use crate::grid::Spacing;
use crate::report::Outcome;
use crate::row;
use clap::Args;
use dimlift::fields::{random_points, GraphSurface, NonhomTerm};
use dimlift::functionals::{
    graph_mean_curvature, huisken_density, lifted_mcf_density, mcf_residual, monotonicity_sweep, ms_density,
    ms_density_tilde, Tolerance,
};
use dimlift::integrate::QuadratureSpec;
use dimlift::LiftConfig;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Args, Serialize)]
pub struct McfArgs {
    /// Dimension N of the minimal-surface checks.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Dimension d of the graph-flow checks.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value = "0.5:4:16")]
    pub r_grid: String,
    #[arg(long, default_value = "0.1:10:16")]
    pub t_grid: String,
    /// Distance of the offset plane.
    #[arg(long, default_value_t = 0.4)]
    pub delta: f64,
    /// Height of the shifted plane in the flow checks.
    #[arg(long, default_value_t = 0.8, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value = "10,40,160")]
    pub n: String,
}

fn slope(a: &[f64]) -> Vec<f64> {
    a.iter().enumerate().map(|(k, _)| 0.5 - 0.3 * k as f64).collect()
}

impl McfArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let spec = QuadratureSpec::default();
        let mut out = Outcome::new(vec!["check", "param", "value", "expected", "abs_error"]);
        let big_n = self.dim;
        let rs = grid(&self.r_grid, Spacing::Linear)?;
        let origin = vec![0.0; big_n + 1];

        let plane = GraphSurface::plane(0.0);
        let rep = monotonicity_sweep(|r| ms_density(&plane, &origin, r, &spec), &rs, Tolerance::Relative(SWEEP_TOL))?;
        for (&r, &v) in rs.iter().zip(&rep.values) {
            out.error(format!("plane Θ at r={r}"), (v - 1.0).abs(), 1e-8);
            out.push(row!["ms_density plane", r, v, 1.0, (v - 1.0).abs()]);
        }
        record_sweep(&mut out, "plane Θ", &rep);

        let a = slope(&vec![0.0; big_n]);
        let tilted = GraphSurface::linear(a.clone(), 0.0);
        for &r in &rs {
            let v = ms_density(&tilted, &origin, r, &spec)?;
            out.error(format!("tilted plane Θ at r={r}"), (v - 1.0).abs(), 1e-8);
            out.push(row!["ms_density tilted", r, v, 1.0, (v - 1.0).abs()]);
        }

        let delta = self.delta;
        let mut w0 = origin.clone();
        w0[big_n] = -delta;
        let offset: Vec<f64> = rs.iter().map(|r| r + delta).collect();
        let rep = monotonicity_sweep(|r| ms_density(&plane, &w0, r, &spec), &offset, Tolerance::Relative(SWEEP_TOL))?;
        let nf = big_n as f64;
        for (&r, &v) in offset.iter().zip(&rep.values) {
            let want = (1.0 - delta * delta / (r * r)).powf(nf / 2.0);
            out.error(format!("offset plane Θ at r={r}"), (v - want).abs(), 1e-6);
            out.push(row!["ms_density offset", r, v, want, (v - want).abs()]);
            let m = ms_density_tilde(&plane, &NonhomTerm::Zero, &w0, r, &spec)?;
            let dr = 1e-4;
            let fd = (ms_density_tilde(&plane, &NonhomTerm::Zero, &w0, r + dr, &spec)?.theta_tilde
                - ms_density_tilde(&plane, &NonhomTerm::Zero, &w0, r - dr, &spec)?.theta_tilde)
                / (2.0 * dr);
            out.error(format!("offset plane derivative identity at r={r}"), (fd - m.derivative_rhs).abs(), 1e-4);
            out.push(row!["ms_density_tilde offset (value = fd slope, expected = rhs)", r, fd, m.derivative_rhs, (fd - m.derivative_rhs).abs()]);
        }
        record_sweep(&mut out, "offset plane Θ", &rep);

        let para = GraphSurface::paraboloid(0.5);
        let pc = para.clone();
        let h = NonhomTerm::scalar(move |y| graph_mean_curvature(&pc, y).unwrap_or(f64::NAN));
        let mut wp = origin.clone();
        wp[0] = 0.1;
        wp[big_n] = -0.2;
        for r in [0.5, 0.8, 1.2] {
            let m = ms_density_tilde(&para, &h, &wp, r, &spec)?;
            let dr = 1e-4;
            let fd = (ms_density_tilde(&para, &h, &wp, r + dr, &spec)?.theta_tilde
                - ms_density_tilde(&para, &h, &wp, r - dr, &spec)?.theta_tilde)
                / (2.0 * dr);
            out.error(format!("paraboloid derivative identity at r={r}"), (fd - m.derivative_rhs).abs(), 1e-4);
            out.push(row!["ms_density_tilde paraboloid (value = fd slope, expected = rhs)", r, fd, m.derivative_rhs, (fd - m.derivative_rhs).abs()]);
        }

        let d = self.d;
        let ts = grid(&self.t_grid, Spacing::Geometric)?;
        let c_d = (4.0 * PI).powf(d as f64 / 2.0);
        let shifted = GraphSurface::plane(self.c);
        let flow_tilted = GraphSurface::linear(slope(&vec![0.0; d]), 0.0);
        let cases: [(&str, &GraphSurface, Box<dyn Fn(f64) -> f64>); 3] = [
            ("plane", &plane, Box::new(move |_| c_d)),
            ("shifted", &shifted, Box::new(move |t| c_d * (-self.c * self.c / (4.0 * t)).exp())),
            ("tilted", &flow_tilted, Box::new(move |_| c_d)),
        ];
        for (name, u, want) in &cases {
            let rep = monotonicity_sweep(|t| huisken_density(*u, d, t, &spec), &ts, Tolerance::Relative(SWEEP_TOL))?;
            for (&t, &v) in ts.iter().zip(&rep.values) {
                let w = want(t);
                out.error(format!("{name} ϑ at t={t}"), (v - w).abs() / w, 1e-8);
                out.push(row![format!("huisken_density {name}"), t, v, w, (v - w).abs()]);
            }
            record_sweep(&mut out, &format!("{name} ϑ"), &rep);
        }

        for (name, u) in [("plane", &plane), ("shifted", &shifted), ("tilted", &flow_tilted)] {
            let mut worst = 0.0f64;
            for x in random_points(d, 3.0, 100, 7)? {
                worst = worst.max(mcf_residual(u, &x, 1.0)?.abs());
            }
            out.error(format!("{name} flow residual"), worst, 0.0);
            out.push(row![format!("mcf_residual {name}"), 100usize, worst, 0.0, worst]);
        }

        let ns: Vec<usize> = list(&self.n)?;
        let t = 0.5;
        let target = huisken_density(&shifted, d, t, &spec)?;
        let mut errs = Vec::new();
        for &n in &ns {
            let cfg = LiftConfig::new(d, n)?;
            let v = lifted_mcf_density(&plane, cfg, t, &spec)?;
            out.error(format!("lifted plane density at n={n}"), (v - c_d).abs() / c_d, 1e-10);
            out.push(row!["lifted_mcf_density plane", n, v, c_d, (v - c_d).abs()]);
            let v = lifted_mcf_density(&shifted, cfg, t, &spec)?;
            errs.push((v - target).abs());
            out.push(row!["lifted_mcf_density shifted", n, v, target, (v - target).abs()]);
        }
        record_decreasing(&mut out, "lifted shifted-plane density", &errs);
        Ok(out)
    }
}
