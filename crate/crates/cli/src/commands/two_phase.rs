use super::{grid, list, record_decreasing, record_sweep, CliResult, SWEEP_TOL};
use crate::grid::Spacing;
use crate::report::Outcome;
use crate::row;
use clap::Args;
use dimlift::fields::{caloric_polynomial, half_space_pair, CaloricKind, HalfSpace, NonhomTerm};
use dimlift::functionals::{
    acf_dphi_lower_bound, acf_phi, caffarelli_phi, lifted_two_phase, monotonicity_sweep, psi, Tolerance,
};
use dimlift::integrate::QuadratureSpec;
use dimlift::LiftConfig;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Args, Serialize)]
pub struct TwoPhaseArgs {
    #[arg(long, default_value = "0.25:4:16")]
    pub r_grid: String,
    #[arg(long, default_value = "0.1:10:16")]
    pub tau_grid: String,
    /// n for the exact lifted half-space values.
    #[arg(long, default_value = "3,10,40,160")]
    pub n: String,
    /// n for the convergence table of a caloric pair.
    #[arg(long, default_value = "5,20,80")]
    pub n_convergence: String,
    /// Cubic perturbation δ of the inhomogeneous pair.
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
}

impl TwoPhaseArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let spec = QuadratureSpec::default();
        let mut out = Outcome::new(vec!["check", "param", "value", "expected", "abs_error"]);
        let (p, m) = half_space_pair();

        let rs = grid(&self.r_grid, Spacing::Linear)?;
        let quarter_pi2 = PI * PI / 4.0;
        let rep = monotonicity_sweep(|r| Ok(acf_phi(&p, &m, 2, r, &spec)?.value), &rs, Tolerance::Relative(SWEEP_TOL))?;
        for (&r, &v) in rs.iter().zip(&rep.values) {
            out.error(format!("half-plane φ at r={r}"), (v - quarter_pi2).abs(), 1e-6);
            out.push(row!["acf_phi half-plane", r, v, quarter_pi2, (v - quarter_pi2).abs()]);
        }
        record_sweep(&mut out, "half-plane φ", &rep);

        let taus = grid(&self.tau_grid, Spacing::Geometric)?;
        let rep = monotonicity_sweep(|t| Ok(caffarelli_phi(&p, &m, 1, t, &spec)?.value), &taus, Tolerance::Relative(SWEEP_TOL))?;
        for (&t, &v) in taus.iter().zip(&rep.values) {
            out.error(format!("half-line Φ at τ={t}"), (v - 0.25).abs(), 1e-8);
            out.push(row!["caffarelli_phi half-line", t, v, 0.25, (v - 0.25).abs()]);
        }
        record_sweep(&mut out, "half-line Φ", &rep);

        for n in list::<usize>(&self.n)? {
            let v = lifted_two_phase(&p, &m, LiftConfig::new(1, n)?, 1.0, &spec)?.value;
            out.error(format!("lifted half-line Φ_n at n={n}"), (v - 0.25).abs(), 1e-8);
            out.push(row!["lifted_two_phase half-line", n, v, 0.25, (v - 0.25).abs()]);
        }

        for (s, want) in [(0.5, 1.0), (0.25, 1.5), (1.0, 0.0)] {
            let v = psi(s)?;
            out.error(format!("ψ({s})"), (v - want).abs(), 0.0);
            out.push(row!["psi", s, v, want, (v - want).abs()]);
        }

        let v1 = HalfSpace::positive().with_delta(self.delta);
        let v2 = HalfSpace::negative();
        let h1 = NonhomTerm::scalar(move |y| v1.source(y));
        for r in [0.5, 1.0, 2.0] {
            let bound = acf_dphi_lower_bound((&v1, &h1), (&v2, &NonhomTerm::Zero), 2, r, &spec)?;
            let dr = 1e-4;
            let fd = (acf_phi(&v1, &v2, 2, r + dr, &spec)?.value - acf_phi(&v1, &v2, 2, r - dr, &spec)?.value) / (2.0 * dr);
            out.violation(format!("perturbed pair at r={r}: φ' = {fd} below bound {bound}"), (bound - 1e-4 - fd).max(0.0));
            out.push(row!["acf_dphi perturbed pair (value = fd slope, expected = bound)", r, fd, bound, f64::NAN]);
        }

        let u1 = caloric_polynomial(CaloricKind::X1Sq);
        let u2 = caloric_polynomial(CaloricKind::Radial);
        let target = caffarelli_phi(&u1, &u2, 1, 1.0, &spec)?.value;
        let mut errs = Vec::new();
        for n in list::<usize>(&self.n_convergence)? {
            let v = lifted_two_phase(&u1, &u2, LiftConfig::new(1, n)?, 1.0, &spec)?.value;
            errs.push((v - target).abs());
            out.push(row!["lifted_two_phase x1sq/radial", n, v, target, (v - target).abs()]);
        }
        record_decreasing(&mut out, "lifted caloric pair", &errs);
        Ok(out)
    }
}
