use super::{grid, list, usage, CliResult};
use crate::grid::Spacing;
use crate::report::Outcome;
use crate::row;
use clap::{Args, ValueEnum};
use dimlift::integrate::pushforward::{pushforward_check_ball_many, pushforward_check_sphere_many};
use dimlift::integrate::sampling::MonteCarloSpec;
use dimlift::integrate::QuadratureSpec;
use dimlift::weights::weight_limit_report;
use dimlift::LiftConfig;
use serde::Serialize;

#[derive(Debug, Args, Serialize)]
pub struct GnLimitArgs {
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Comma list of n.
    #[arg(long, default_value = "8,16,32,64,128")]
    pub n: String,
    /// Grid along the first axis.
    #[arg(long, default_value = "-2:2:201", allow_hyphen_values = true)]
    pub x_grid: String,
    /// Required range `lo,hi` of successive error ratios.
    #[arg(long, default_value = "1.6,2.4")]
    pub ratio_range: String,
}

impl GnLimitArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let ns: Vec<usize> = list(&self.n)?;
        let range: Vec<f64> = list(&self.ratio_range)?;
        let [lo, hi] = range[..] else { return usage("--ratio-range takes `lo,hi`") };
        let xs: Vec<Vec<f64>> = grid(&self.x_grid, Spacing::Linear)?
            .into_iter()
            .map(|x| {
                let mut p = vec![0.0; self.d];
                p[0] = x;
                p
            })
            .collect();
        if self.d == 0 {
            return usage("--d must be positive");
        }
        let rep = weight_limit_report(self.d, self.t, &xs, &ns)?;
        let mut out = Outcome::new(vec!["n", "sup_rel_error", "ratio_to_next"]);
        for (k, &(n, e)) in rep.rows.iter().enumerate() {
            out.push(row![n, e, rep.ratios.get(k).copied().unwrap_or(f64::NAN)]);
        }
        let errs: Vec<f64> = rep.rows.iter().map(|r| r.1).collect();
        out.max_error = errs.iter().copied().fold(0.0, f64::max);
        super::record_decreasing(&mut out, "sup relative error", &errs);
        for &r in &rep.ratios {
            out.require((lo..=hi).contains(&r), || format!("error ratio {r} outside [{lo}, {hi}]"));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Sphere,
    Ball,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct PushforwardArgs {
    #[arg(long, default_value = "1,2")]
    pub d: String,
    #[arg(long, default_value = "1,2,5,20")]
    pub n: String,
    /// Times t (sphere) and τ (ball).
    #[arg(long, default_value = "0.5,1")]
    pub t: String,
    #[arg(long, value_enum, default_value_t = Region::Both)]
    pub region: Region,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Number of seeds, `seed, seed+1, …`.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    /// Agreement threshold in standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub sigma: f64,
    /// Fraction of seeds that must agree, per configuration.
    #[arg(long, default_value_t = 0.95)]
    pub min_fraction: f64,
}

type TestFn = fn(&[f64]) -> f64;

const TEST_FUNCTIONS: [(&str, TestFn); 5] = [
    ("1", |_| 1.0),
    ("x1", |x| x[0]),
    ("x1^2", |x| x[0] * x[0]),
    ("x1^4", |x| x[0].powi(4)),
    ("exp(-|x|^2)", |x| (-x.iter().map(|a| a * a).sum::<f64>()).exp()),
];

/// Exact values of `1` and `x₁²`: `1, 2t` on the sphere, `τ, τ²` on the ball.
fn exact(region: Region, phi: &str, t: f64) -> Option<f64> {
    match (region, phi) {
        (Region::Sphere, "1") => Some(1.0),
        (Region::Sphere, "x1^2") => Some(2.0 * t),
        (Region::Ball, "1") => Some(t),
        (Region::Ball, "x1^2") => Some(t * t),
        _ => None,
    }
}

impl PushforwardArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let ds: Vec<usize> = list(&self.d)?;
        let ns: Vec<usize> = list(&self.n)?;
        let ts: Vec<f64> = list(&self.t)?;
        if self.seeds == 0 {
            return usage("--seeds must be positive");
        }
        let regions: &[Region] = match self.region {
            Region::Both => &[Region::Sphere, Region::Ball],
            Region::Sphere => &[Region::Sphere],
            Region::Ball => &[Region::Ball],
        };
        let quad = QuadratureSpec::default();
        let mut out = Outcome::new(vec![
            "region", "d", "n", "t", "phi", "quadrature", "exact", "mc_mean", "max_discrepancy", "agree_fraction",
        ]);
        let phis: Vec<TestFn> = TEST_FUNCTIONS.iter().map(|p| p.1).collect();
        for &region in regions {
            for &d in &ds {
                for &n in &ns {
                    let cfg = LiftConfig::new(d, n)?;
                    for &t in &ts {
                        let mut per_seed = Vec::with_capacity(self.seeds as usize);
                        for s in 0..self.seeds {
                            let mc = MonteCarloSpec::new(seed.wrapping_add(s), self.samples);
                            per_seed.push(match region {
                                Region::Sphere => pushforward_check_sphere_many(&phis, cfg, t, &mc, &quad)?,
                                _ => {
                                    let ball: Vec<_> = phis.iter().map(|f| move |x: &[f64], _t: f64| f(x)).collect();
                                    pushforward_check_ball_many(&ball, cfg, t, &mc, &quad)?
                                }
                            });
                        }
                        for (k, (name, _)) in TEST_FUNCTIONS.iter().enumerate() {
                            let reps: Vec<_> = per_seed.iter().map(|v| v[k]).collect();
                            let q = reps[0].quad.value;
                            let agree = reps.iter().filter(|r| r.discrepancy <= self.sigma).count();
                            let frac = agree as f64 / reps.len() as f64;
                            let worst = reps.iter().map(|r| r.discrepancy).fold(0.0, f64::max);
                            let mean = reps.iter().map(|r| r.mc.value).sum::<f64>() / reps.len() as f64;
                            let label = format!("{region:?} d={d} n={n} t={t} phi={name}");
                            let ex = exact(region, name, t);
                            if let Some(e) = ex {
                                out.error(format!("{label} exact moment"), (q - e).abs(), 1e-8);
                            }
                            out.violation(format!("{label} agreement fraction {frac}"), (self.min_fraction - frac).max(0.0));
                            let region_name = if region == Region::Sphere { "sphere" } else { "ball" };
                            out.push(row![region_name, d, n, t, *name, q, ex.unwrap_or(f64::NAN), mean, worst, frac]);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
