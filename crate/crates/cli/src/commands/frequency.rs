use super::{grid, record_sweep, usage, CliResult, SWEEP_TOL};
use crate::grid::Spacing;
use crate::report::Outcome;
use crate::row;
use clap::Args;
use dimlift::fields::{
    caloric_polynomial, harmonic_polynomial, heat_kernel_translate, CaloricKind, HarmonicKind, ScalarField,
    SpaceTimeField,
};
use dimlift::functionals::{almgren, monotonicity_sweep, poon, Tolerance};
use dimlift::integrate::QuadratureSpec;
use serde::Serialize;

#[derive(Debug, Args, Serialize)]
pub struct FrequencyArgs {
    /// Poon's frequency of a caloric field instead of Almgren's of a harmonic one.
    #[arg(long)]
    pub parabolic: bool,
    /// Harmonic: x1, x1x2, rez<k>. Caloric: x1, x1sq, x1cube, radial, heat-kernel.
    #[arg(long)]
    pub field: Option<String>,
    /// Dimension of the domain: N (harmonic) or d (caloric).
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value = "0.5:2:8")]
    pub r_grid: String,
    #[arg(long)]
    pub t_grid: Option<String>,
    /// Heat-kernel centre, first coordinate.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub x0: f64,
    /// Heat-kernel pole time.
    #[arg(long, default_value_t = 2.0)]
    pub s0: f64,
}

pub(crate) fn harmonic_field(name: &str) -> CliResult<(Box<dyn ScalarField>, f64)> {
    let kind = match name {
        "x1" => HarmonicKind::X1,
        "x1x2" => HarmonicKind::X1X2,
        s if s.starts_with("rez") => match s[3..].parse::<u32>() {
            Ok(k) if k >= 1 => HarmonicKind::ReZk(k),
            _ => return usage(format!("bad harmonic field `{s}`: expected rez<k> with k >= 1")),
        },
        s => return usage(format!("unknown harmonic field `{s}`")),
    };
    let p = harmonic_polynomial(kind);
    let deg = p.degree() as f64;
    Ok((Box::new(p), deg))
}

/// A caloric field by name and its frequency when constant.
pub(crate) fn caloric_field(name: &str, d: usize, x0: f64, s0: f64) -> CliResult<(Box<dyn SpaceTimeField>, Option<f64>)> {
    let kind = match name {
        "x1" => CaloricKind::X1,
        "x1sq" => CaloricKind::X1Sq,
        "x1cube" => CaloricKind::X1Cube,
        "radial" => CaloricKind::Radial,
        "heat-kernel" => {
            let mut c = vec![0.0; d];
            c[0] = x0;
            return Ok((Box::new(heat_kernel_translate(c, s0)?), None));
        }
        s => return usage(format!("unknown caloric field `{s}`")),
    };
    let p = caloric_polynomial(kind);
    let f = p.frequency();
    Ok((Box::new(p), Some(f)))
}

impl FrequencyArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let spec = QuadratureSpec::default();
        let mut out = Outcome::new(vec!["field", "param", "frequency", "expected", "abs_error"]);
        if self.parabolic {
            let name = self.field.as_deref().unwrap_or("x1sq");
            let d = self.dim.unwrap_or(1);
            let (u, expected) = caloric_field(name, d, self.x0, self.s0)?;
            let default_grid = if name == "heat-kernel" { "0.1:1:16" } else { "0.25:4:16" };
            let ts = grid(self.t_grid.as_deref().unwrap_or(default_grid), Spacing::Geometric)?;
            let rep = monotonicity_sweep(|t| Ok(poon(u.as_ref(), d, t, &spec)?.l), &ts, Tolerance::Relative(SWEEP_TOL))?;
            for (&t, &l) in ts.iter().zip(&rep.values) {
                let err = expected.map_or(f64::NAN, |e| (l - e).abs());
                if let Some(e) = expected {
                    out.error(format!("{name} at t={t}: frequency {l} vs {e}"), err, 1e-8);
                }
                out.push(row![name, t, l, expected.unwrap_or(f64::NAN), err]);
            }
            record_sweep(&mut out, &format!("Poon frequency of {name}"), &rep);
        } else {
            let name = self.field.as_deref().unwrap_or("x1x2");
            let dim = self.dim.unwrap_or(3);
            if dim < 2 {
                return usage("harmonic fields live in dimension >= 2");
            }
            let (v, deg) = harmonic_field(name)?;
            let rs = grid(&self.r_grid, Spacing::Linear)?;
            let rep = monotonicity_sweep(|r| Ok(almgren(v.as_ref(), dim, r, &spec)?.l), &rs, Tolerance::Relative(SWEEP_TOL))?;
            for (&r, &l) in rs.iter().zip(&rep.values) {
                let err = (l - deg).abs();
                out.error(format!("{name} at r={r}: frequency {l} vs {deg}"), err, 1e-8);
                out.push(row![name, r, l, deg, err]);
            }
            record_sweep(&mut out, &format!("Almgren frequency of {name}"), &rep);
        }
        Ok(out)
    }
}
