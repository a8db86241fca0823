use super::frequency::caloric_field;
use super::{list, record_decreasing, usage, CliResult};
use crate::report::Outcome;
use crate::row;
use clap::{Args, ValueEnum};
use dimlift::fields::{
    bump_spacetime, caloric_from_grid, caloric_polynomial, circle_map, half_space_pair, harmonic_phase,
    harmonic_polynomial, heat_kernel_translate, random_points, CaloricKind, GraphSurface, HarmonicKind,
    SpaceTimeField, SphereField,
};
use dimlift::functionals::{
    caffarelli_phi, huisken_density, lifted_frequency, lifted_hm_phi, lifted_mcf_density, lifted_two_phase, poon,
    struwe_phi,
};
use dimlift::integrate::QuadratureSpec;
use dimlift::{chain_rule_check, LiftConfig};
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    Frequency,
    TwoPhase,
    HarmonicMap,
    Mcf,
    ChainRule,
}

#[derive(Debug, Args, Serialize)]
pub struct LiftDemoArgs {
    #[arg(long, value_enum, default_value_t = Which::Frequency)]
    pub which: Which,
    /// frequency: x1, x1sq, x1cube, radial, heat-kernel; two-phase: half-space,
    /// x1sq-radial; harmonic-map: circle, phase-x1x2; mcf: plane, shifted, tilted.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Time t (or τ for two-phase).
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value = "10,40,160")]
    pub n: String,
    /// Random points per field for the chain-rule check.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

/// Every space-time catalog field on `ℝ^d`, defined for `t < 8`.
fn chain_rule_catalog(d: usize) -> CliResult<Vec<Box<dyn SpaceTimeField>>> {
    let mut out: Vec<Box<dyn SpaceTimeField>> = [CaloricKind::X1, CaloricKind::X1Sq, CaloricKind::X1Cube, CaloricKind::Radial]
        .into_iter()
        .map(|k| Box::new(caloric_polynomial(k)) as Box<dyn SpaceTimeField>)
        .collect();
    out.push(Box::new(heat_kernel_translate(vec![0.3; d], 8.0)?));
    out.push(Box::new(bump_spacetime(0.5, 2.5, 0.2, 3.0, 4, 0.3)?));
    let axis: Vec<f64> = (0..9).map(|k| -2.0 + 0.5 * k as f64).collect();
    let mut nodes: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..d {
        nodes = nodes
            .into_iter()
            .flat_map(|p| axis.iter().map(move |&c| [p.clone(), vec![c]].concat()))
            .collect();
    }
    let values = nodes
        .iter()
        .map(|p| (1.0 + p[0]) * (-p.iter().map(|c| c * c).sum::<f64>()).exp())
        .collect();
    out.push(Box::new(caloric_from_grid(nodes, values, 8.0)?));
    Ok(out)
}

impl LiftDemoArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let spec = QuadratureSpec::default();
        let ns: Vec<usize> = list(&self.n)?;
        let (d, t) = (self.d, self.t);
        if d == 0 || !(t > 0.0) {
            return usage("--d must be positive and --t must be positive");
        }
        if self.which == Which::ChainRule {
            return self.chain_rule(&ns, seed);
        }
        let mut out = Outcome::new(vec!["field", "n", "lifted", "limit", "abs_error"]);
        let (name, limit, lifted): (&str, f64, Box<dyn Fn(LiftConfig) -> dimlift::Result<f64>>) = match self.which {
            Which::Frequency => {
                let name = self.field.as_deref().unwrap_or("x1sq");
                let (u, _) = caloric_field(name, d, 0.5, t + 1.0)?;
                let u: Arc<dyn SpaceTimeField> = Arc::from(u);
                let limit = 2.0 * poon(u.as_ref(), d, t, &spec)?.l;
                (name, limit, Box::new(move |cfg| lifted_frequency(u.as_ref(), cfg, t, &spec)))
            }
            Which::TwoPhase => {
                let name = self.field.as_deref().unwrap_or("half-space");
                let (u1, u2): (Arc<dyn SpaceTimeField>, Arc<dyn SpaceTimeField>) = match name {
                    "half-space" => {
                        let (p, m) = half_space_pair();
                        (Arc::new(p), Arc::new(m))
                    }
                    "x1sq-radial" => (
                        Arc::new(caloric_polynomial(CaloricKind::X1Sq)),
                        Arc::new(caloric_polynomial(CaloricKind::Radial)),
                    ),
                    s => return usage(format!("unknown two-phase pair `{s}`")),
                };
                let limit = caffarelli_phi(u1.as_ref(), u2.as_ref(), d, t, &spec)?.value;
                (name, limit, Box::new(move |cfg| Ok(lifted_two_phase(u1.as_ref(), u2.as_ref(), cfg, t, &spec)?.value)))
            }
            Which::HarmonicMap => {
                let name = self.field.as_deref().unwrap_or("circle");
                let u: Arc<dyn SphereField> = match name {
                    "circle" => Arc::new(circle_map(1.0)),
                    "phase-x1x2" if d >= 2 => Arc::new(harmonic_phase(Arc::new(harmonic_polynomial(HarmonicKind::X1X2)), 1.0)),
                    "phase-x1x2" => return usage("phase-x1x2 needs --d 2 or more"),
                    s => return usage(format!("unknown sphere-valued map `{s}`")),
                };
                let limit = struwe_phi(u.as_ref(), d, t, &spec)?;
                (name, limit, Box::new(move |cfg| lifted_hm_phi(u.as_ref(), cfg, t, &spec)))
            }
            Which::Mcf => {
                let name = self.field.as_deref().unwrap_or("shifted");
                let u = match name {
                    "plane" => GraphSurface::plane(0.0),
                    "shifted" => GraphSurface::plane(0.8),
                    "tilted" => GraphSurface::linear((0..d).map(|k| 0.5 - 0.3 * k as f64).collect(), 0.0),
                    s => return usage(format!("unknown graph `{s}`")),
                };
                let limit = huisken_density(&u, d, t, &spec)?;
                (name, limit, Box::new(move |cfg| lifted_mcf_density(&u, cfg, t, &spec)))
            }
            Which::ChainRule => unreachable!(),
        };
        let mut errs = Vec::new();
        for &n in &ns {
            let v = lifted(LiftConfig::new(d, n)?)?;
            errs.push((v - limit).abs());
            out.push(row![name, n, v, limit, (v - limit).abs()]);
        }
        out.max_error = errs.iter().copied().fold(0.0, f64::max);
        record_decreasing(&mut out, &format!("lifted {name}"), &errs);
        Ok(out)
    }

    fn chain_rule(&self, ns: &[usize], seed: u64) -> CliResult<Outcome> {
        let d = self.d;
        let mut out = Outcome::new(vec!["field", "n", "points", "max_first_order", "max_laplacian"]);
        for &n in ns {
            let cfg = LiftConfig::new(d, n)?;
            let nd = cfg.big_n();
            if nd > 12 {
                return usage(format!("chain-rule checks use n·d <= 12, got {nd}"));
            }
            let pts = random_points(nd, 0.6, self.points, seed ^ nd as u64)?
                .into_iter()
                .filter(|y| y.iter().map(|c| c * c).sum::<f64>() > 1e-4)
                .collect::<Vec<_>>();
            for u in chain_rule_catalog(d)? {
                let c = chain_rule_check(cfg, u.as_ref(), &pts)?;
                let label = format!("{} n={n}", u.name());
                out.error(format!("{label} first order"), c.max_first_order, 1e-6);
                out.error(format!("{label} Laplacian"), c.max_laplacian, 1e-4);
                out.push(row![u.name(), n, c.points, c.max_first_order, c.max_laplacian]);
            }
        }
        Ok(out)
    }
}
