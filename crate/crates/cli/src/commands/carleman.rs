use super::{list, CliResult};
use crate::report::Outcome;
use crate::row;
use clap::Args;
use dimlift::fields::{bump_spacetime, radial_bump, RadialBump, SpaceTimeBump};
use dimlift::functionals::{carleman_elliptic_check, carleman_elliptic_constant, carleman_parabolic_check};
use dimlift::integrate::QuadratureSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Args, Serialize)]
pub struct CarlemanArgs {
    /// Dimension N of the elliptic checks.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Dimension d of the parabolic checks.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value = "0.25,1.3,-0.7", allow_hyphen_values = true)]
    pub gammas: String,
    /// Exponents α; 2α - d/2 - 1 must be positive and not an integer.
    #[arg(long, default_value = "1.0,1.4,2.1")]
    pub alphas: String,
    /// Random (γ, N) pairs compared with a long scan over ℓ.
    #[arg(long, default_value_t = 50)]
    pub oracle_cases: usize,
}

pub(crate) fn elliptic_bumps() -> Vec<RadialBump> {
    [(1.0, 2.0, 3, 0.0), (0.5, 2.5, 4, 0.4), (0.8, 1.6, 5, -0.3)]
        .into_iter()
        .map(|(a, b, k, m)| radial_bump(a, b, k, m).expect("catalog bump"))
        .collect()
}

pub(crate) fn parabolic_bumps() -> Vec<SpaceTimeBump> {
    [(1.0, 2.0, 1.0, 2.0, 3, 0.0), (0.5, 2.5, 0.5, 1.5, 4, 0.3), (0.8, 1.6, 1.0, 3.0, 5, -0.3)]
        .into_iter()
        .map(|(a, b, s, e, k, m)| bump_spacetime(a, b, s, e, k, m).expect("catalog bump"))
        .collect()
}

/// `min_{0 ≤ ℓ ≤ 400} |(N/2 + ℓ + γ - 2)(N/2 + ℓ - γ)|`.
fn scanned_constant(gamma: f64, dim: usize) -> f64 {
    let h = dim as f64 / 2.0;
    (0..=400)
        .map(|l| ((h + l as f64 + gamma - 2.0) * (h + l as f64 - gamma)).abs())
        .fold(f64::INFINITY, f64::min)
}

impl CarlemanArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let spec = QuadratureSpec::default();
        let gammas: Vec<f64> = list(&self.gammas)?;
        let alphas: Vec<f64> = list(&self.alphas)?;
        let mut out = Outcome::new(vec!["check", "case", "param", "lhs", "rhs", "constant", "satisfied"]);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..self.oracle_cases {
            let gamma: f64 = rng.gen_range(-4.0..4.0);
            let dim: usize = rng.gen_range(1..=9);
            let c = carleman_elliptic_constant(gamma, dim);
            let s = scanned_constant(gamma, dim);
            let ok = c == s;
            out.require(ok, || format!("c({gamma}, {dim}) = {c} but the scan gives {s}"));
            out.push(row!["constant", format!("N={dim}"), gamma, c, s, c, ok]);
        }
        for b in elliptic_bumps() {
            for &g in &gammas {
                let rep = carleman_elliptic_check(&b, self.dim, g, b.support(), &spec)?;
                let case = format!("{} N={}", dimlift::fields::ScalarField::name(&b), self.dim);
                let excess = if rep.satisfied { 0.0 } else { (rep.rhs - rep.lhs) / rep.lhs };
                out.violation(format!("elliptic {case} γ={g}: rhs {} above lhs {}", rep.rhs, rep.lhs), excess);
                out.push(row!["elliptic", case, g, rep.lhs, rep.rhs, rep.constant, rep.satisfied]);
            }
        }
        for u in parabolic_bumps() {
            for &a in &alphas {
                let rep = carleman_parabolic_check(&u, self.d, a, u.space_window(), u.time_window(), &spec)?;
                let case = format!("{} d={}", dimlift::fields::SpaceTimeField::name(&u), self.d);
                let excess = if rep.satisfied { 0.0 } else { (rep.lhs - rep.rhs) / rep.rhs };
                out.violation(format!("parabolic {case} α={a}: lhs {} above rhs {}", rep.lhs, rep.rhs), excess);
                out.push(row!["parabolic", case, a, rep.lhs, rep.rhs, rep.constant, rep.satisfied]);
            }
        }
        Ok(out)
    }
}
