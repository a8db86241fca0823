use super::elliptic::{radial_bump, Profile, RadialBump};
use super::{ScalarField, SpaceTimeField, SpaceTimeJet};
use crate::error::{domain, Error, Result};
use crate::lift::norm_sq;
use std::f64::consts::PI;
use std::path::Path;

/// Parabolically homogeneous caloric polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaloricKind {
    /// `x₁`
    X1,
    /// `x₁² - 2t`
    X1Sq,
    /// `x₁³ - 6x₁t`
    X1Cube,
    /// `|x|² - 2dt`
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaloricPolynomial {
    pub kind: CaloricKind,
}

pub fn caloric_polynomial(kind: CaloricKind) -> CaloricPolynomial {
    CaloricPolynomial { kind }
}

impl CaloricPolynomial {
    /// Parabolic degree `k`: `u(λx, λ²t) = λ^k u(x, t)`.
    pub fn degree(&self) -> u32 {
        match self.kind {
            CaloricKind::X1 => 1,
            CaloricKind::X1Sq | CaloricKind::Radial => 2,
            CaloricKind::X1Cube => 3,
        }
    }

    /// The constant value `k/2` of the frequency `t𝒟/ℋ`.
    pub fn frequency(&self) -> f64 {
        self.degree() as f64 / 2.0
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("space-time fields live on t > 0, got t = {t}"));
    }
    Ok(())
}

impl SpaceTimeField for CaloricPolynomial {
    fn jet(&self, x: &[f64], t: f64) -> Result<SpaceTimeJet> {
        check_t(t)?;
        let d = x.len();
        if d == 0 {
            return domain("caloric polynomial needs d >= 1");
        }
        let mut gradient = vec![0.0; d];
        let mut grad_dt = vec![0.0; d];
        let x1 = x[0];
        let (value, dt, laplacian) = match self.kind {
            CaloricKind::X1 => {
                gradient[0] = 1.0;
                (x1, 0.0, 0.0)
            }
            CaloricKind::X1Sq => {
                gradient[0] = 2.0 * x1;
                (x1 * x1 - 2.0 * t, -2.0, 2.0)
            }
            CaloricKind::X1Cube => {
                gradient[0] = 3.0 * x1 * x1 - 6.0 * t;
                grad_dt[0] = -6.0;
                (x1.powi(3) - 6.0 * x1 * t, -6.0 * x1, 6.0 * x1)
            }
            CaloricKind::Radial => {
                gradient.iter_mut().zip(x).for_each(|(g, xi)| *g = 2.0 * xi);
                let df = d as f64;
                (norm_sq(x) - 2.0 * df * t, -2.0 * df, 2.0 * df)
            }
        };
        Ok(SpaceTimeJet { value, gradient, dt, laplacian, grad_dt, dtt: 0.0 })
    }

    fn is_caloric(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        match self.kind {
            CaloricKind::X1 => "x1",
            CaloricKind::X1Sq => "x1sq",
            CaloricKind::X1Cube => "x1cube",
            CaloricKind::Radial => "radial",
        }
        .into()
    }
}

/// `u(x, t) = G(x - x₀, s₀ - t)` for `t < s₀`: a backward caloric function.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatKernelTranslate {
    pub x0: Vec<f64>,
    pub s0: f64,
}

pub fn heat_kernel_translate(x0: Vec<f64>, s0: f64) -> Result<HeatKernelTranslate> {
    if x0.is_empty() || !(s0 > 0.0) {
        return domain("heat kernel translate needs a centre and s0 > 0");
    }
    Ok(HeatKernelTranslate { x0, s0 })
}

impl SpaceTimeField for HeatKernelTranslate {
    fn jet(&self, x: &[f64], t: f64) -> Result<SpaceTimeJet> {
        check_t(t)?;
        let d = self.x0.len();
        if x.len() != d {
            return domain(format!("heat kernel translate lives on ℝ^{d}"));
        }
        let sigma = self.s0 - t;
        if !(sigma > 0.0) {
            return domain(format!("heat kernel translate needs t < s0 = {}, got {t}", self.s0));
        }
        let z: Vec<f64> = x.iter().zip(&self.x0).map(|(a, b)| a - b).collect();
        let z2 = norm_sq(&z);
        let df = d as f64;
        let u = (4.0 * PI * sigma).powf(-df / 2.0) * (-z2 / (4.0 * sigma)).exp();
        let a = z2 / (4.0 * sigma * sigma) - df / (2.0 * sigma);
        let ds = u * a;
        let dss = u * (a * a - z2 / (2.0 * sigma.powi(3)) + df / (2.0 * sigma * sigma));
        Ok(SpaceTimeJet {
            value: u,
            gradient: z.iter().map(|zi| -zi / (2.0 * sigma) * u).collect(),
            dt: -ds,
            laplacian: ds,
            grad_dt: z
                .iter()
                .map(|zi| -zi * u / (2.0 * sigma * sigma) + zi / (2.0 * sigma) * ds)
                .collect(),
            dtt: dss,
        })
    }

    fn is_caloric(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        format!("heat_kernel_translate(s0={})", self.s0)
    }
}

/// `u₁ = (x₁)⁺`, `u₂ = (x₁)⁻` as time-independent space-time fields.
pub type HalfSpaceCaloric = super::elliptic::HalfSpace;

pub fn half_space_pair() -> (HalfSpaceCaloric, HalfSpaceCaloric) {
    (HalfSpaceCaloric::positive(), HalfSpaceCaloric::negative())
}

/// `u(x, t) = (1 + m x₁) P(|x|) Q(t)` with bump profiles supported in
/// `r_in < |x| < r_out` and `t_in < t < t_out`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeBump {
    space: RadialBump,
    time: Profile,
}

pub fn bump_spacetime(
    r_in: f64,
    r_out: f64,
    t_in: f64,
    t_out: f64,
    k: u32,
    modulation: f64,
) -> Result<SpaceTimeBump> {
    if !(t_in > 0.0) {
        return domain("space-time bump needs t_in > 0");
    }
    Ok(SpaceTimeBump { space: radial_bump(r_in, r_out, k, modulation)?, time: Profile::new(t_in, t_out, k)? })
}

impl SpaceTimeBump {
    pub fn time_window(&self) -> (f64, f64) {
        (self.time.a, self.time.b)
    }

    pub fn space_window(&self) -> (f64, f64) {
        (self.space.profile.a, self.space.profile.b)
    }

    /// A point where `|u| = 1`: the centre of both windows.
    pub fn centre(&self, d: usize) -> (Vec<f64>, f64) {
        let mut x = vec![0.0; d];
        x[d - 1] = self.space.profile.mid();
        (x, self.time.mid())
    }
}

impl SpaceTimeField for SpaceTimeBump {
    fn jet(&self, x: &[f64], t: f64) -> Result<SpaceTimeJet> {
        check_t(t)?;
        let s = self.space.jet(x)?;
        let (q, q1, q2) = self.time.eval(t);
        Ok(SpaceTimeJet {
            value: s.value * q,
            gradient: s.gradient.iter().map(|g| g * q).collect(),
            dt: s.value * q1,
            laplacian: s.laplacian() * q,
            grad_dt: s.gradient.iter().map(|g| g * q1).collect(),
            dtt: s.value * q2,
        })
    }

    fn name(&self) -> String {
        format!(
            "bump(r in ({}, {}), t in ({}, {}))",
            self.space.profile.a, self.space.profile.b, self.time.a, self.time.b
        )
    }
}

/// `u(x, t) = ∫ G(x - ξ, T - t) g(ξ) dξ` with the integral replaced by the
/// trapezoid rule on a tensor grid. The kernel derivatives are exact, so
/// `Δu + ∂_t u` vanishes up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct DataCaloric {
    nodes: Vec<Vec<f64>>,
    /// `g(ξ_k)` times the trapezoid cell weight.
    masses: Vec<f64>,
    terminal: f64,
    spacing: f64,
}

/// Build the caloric extension of grid data to `t < terminal`.
pub fn caloric_from_grid(nodes: Vec<Vec<f64>>, values: Vec<f64>, terminal: f64) -> Result<DataCaloric> {
    if nodes.is_empty() || nodes.len() != values.len() {
        return domain("grid data needs one value per node");
    }
    if !(terminal > 0.0) {
        return domain("terminal time must be positive");
    }
    let d = nodes[0].len();
    if d == 0 || nodes.iter().any(|p| p.len() != d) {
        return domain("grid nodes must share one positive dimension");
    }
    let mut axes: Vec<Vec<f64>> = vec![Vec::new(); d];
    for p in &nodes {
        for (axis, &c) in axes.iter_mut().zip(p) {
            axis.push(c);
        }
    }
    for axis in axes.iter_mut() {
        axis.sort_by(f64::total_cmp);
        axis.dedup();
    }
    let count: usize = axes.iter().map(Vec::len).product();
    if count != nodes.len() || axes.iter().any(|a| a.len() < 2) {
        return domain("grid data must form a full tensor grid with at least two nodes per axis");
    }
    let spacing = axes
        .iter()
        .flat_map(|a| a.windows(2).map(|w| w[1] - w[0]))
        .fold(0.0f64, f64::max);
    let trap = |axis: &[f64], c: f64| -> f64 {
        let i = axis.partition_point(|&v| v < c);
        let left = if i > 0 { c - axis[i - 1] } else { 0.0 };
        let right = if i + 1 < axis.len() { axis[i + 1] - c } else { 0.0 };
        (left + right) / 2.0
    };
    let masses = nodes
        .iter()
        .zip(&values)
        .map(|(p, g)| g * p.iter().zip(&axes).map(|(&c, a)| trap(a, c)).product::<f64>())
        .collect();
    Ok(DataCaloric { nodes, masses, terminal, spacing })
}

/// Read `x_1, …, x_d, g` rows (header optional) and build the caloric extension.
pub fn caloric_from_data(path: impl AsRef<Path>, terminal: f64) -> Result<DataCaloric> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path.as_ref())
        .map_err(|e| Error::Input(e.to_string()))?;
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Input(e.to_string()))?;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(mut row) if row.len() >= 2 => {
                values.push(row.pop().unwrap());
                nodes.push(row);
            }
            Err(_) if i == 0 => continue,
            _ => return Err(Error::Input(format!("bad data row {}", i + 1))),
        }
    }
    caloric_from_grid(nodes, values, terminal)
}

impl DataCaloric {
    /// Closest admissible distance to the terminal time for accurate values.
    pub fn min_gap(&self) -> f64 {
        (self.spacing * self.spacing).max(1e-3)
    }

    pub fn terminal(&self) -> f64 {
        self.terminal
    }
}

impl SpaceTimeField for DataCaloric {
    fn jet(&self, x: &[f64], t: f64) -> Result<SpaceTimeJet> {
        check_t(t)?;
        let d = self.nodes[0].len();
        if x.len() != d {
            return domain(format!("data field lives on ℝ^{d}"));
        }
        let sigma = self.terminal - t;
        if !(sigma > 0.0) {
            return domain(format!("data field is defined for t < {}", self.terminal));
        }
        if sigma < self.min_gap() {
            return Err(Error::Accuracy {
                what: format!("data field at T - t = {sigma:e} (grid resolves T - t >= {:e})", self.min_gap()),
                last: f64::NAN,
                previous: f64::NAN,
            });
        }
        let df = d as f64;
        let norm = (4.0 * PI * sigma).powf(-df / 2.0);
        let mut jet = SpaceTimeJet {
            value: 0.0,
            gradient: vec![0.0; d],
            dt: 0.0,
            laplacian: 0.0,
            grad_dt: vec![0.0; d],
            dtt: 0.0,
        };
        let mut z = vec![0.0; d];
        for (p, &m) in self.nodes.iter().zip(&self.masses) {
            for k in 0..d {
                z[k] = x[k] - p[k];
            }
            let z2 = norm_sq(&z);
            let g = m * norm * (-z2 / (4.0 * sigma)).exp();
            if g == 0.0 {
                continue;
            }
            let a = z2 / (4.0 * sigma * sigma) - df / (2.0 * sigma);
            let ds = g * a;
            jet.value += g;
            jet.laplacian += ds;
            jet.dt -= ds;
            jet.dtt += g * (a * a - z2 / (2.0 * sigma.powi(3)) + df / (2.0 * sigma * sigma));
            for k in 0..d {
                jet.gradient[k] -= z[k] / (2.0 * sigma) * g;
                jet.grad_dt[k] += -z[k] * g / (2.0 * sigma * sigma) + z[k] / (2.0 * sigma) * ds;
            }
        }
        Ok(jet)
    }

    fn is_caloric(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        format!("data(T={})", self.terminal)
    }
}
