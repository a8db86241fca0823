use super::{ScalarField, ScalarJet, SpaceTimeField, SpaceTimeJet};
use crate::error::{domain, Result};
use num_complex::Complex64;

/// Catalogue of harmonic polynomials on `ℝ^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicKind {
    /// `y₁`
    X1,
    /// `y₁ y₂`
    X1X2,
    /// `Re (y₁ + i y₂)^k`
    ReZk(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPolynomial {
    pub kind: HarmonicKind,
    /// Multiplies the polynomial.
    pub scale: f64,
}

pub fn harmonic_polynomial(kind: HarmonicKind) -> HarmonicPolynomial {
    HarmonicPolynomial { kind, scale: 1.0 }
}

impl HarmonicPolynomial {
    pub fn scaled(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            HarmonicKind::X1 => 1,
            HarmonicKind::X1X2 => 2,
            HarmonicKind::ReZk(k) => k,
        }
    }
}

fn zero_jet(n: usize) -> ScalarJet {
    ScalarJet { value: 0.0, gradient: vec![0.0; n], hessian: vec![0.0; n * n] }
}

impl ScalarField for HarmonicPolynomial {
    fn jet(&self, y: &[f64]) -> Result<ScalarJet> {
        let n = y.len();
        let need = if self.kind == HarmonicKind::X1 { 1 } else { 2 };
        if n < need {
            return domain(format!("{} needs at least {need} coordinates", self.name()));
        }
        let mut j = zero_jet(n);
        match self.kind {
            HarmonicKind::X1 => {
                j.value = y[0];
                j.gradient[0] = 1.0;
            }
            HarmonicKind::X1X2 => {
                j.value = y[0] * y[1];
                j.gradient[0] = y[1];
                j.gradient[1] = y[0];
                j.hessian[1] = 1.0;
                j.hessian[n] = 1.0;
            }
            HarmonicKind::ReZk(k) => {
                let z = Complex64::new(y[0], y[1]);
                let kf = k as f64;
                j.value = z.powu(k).re;
                if k >= 1 {
                    let d1 = kf * z.powu(k - 1);
                    j.gradient[0] = d1.re;
                    j.gradient[1] = -d1.im;
                }
                if k >= 2 {
                    let d2 = kf * (kf - 1.0) * z.powu(k - 2);
                    j.hessian[0] = d2.re;
                    j.hessian[1] = -d2.im;
                    j.hessian[n] = -d2.im;
                    j.hessian[n + 1] = -d2.re;
                }
            }
        }
        if self.scale != 1.0 {
            j.value *= self.scale;
            j.gradient.iter_mut().for_each(|g| *g *= self.scale);
            j.hessian.iter_mut().for_each(|h| *h *= self.scale);
        }
        Ok(j)
    }

    fn is_harmonic(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        match self.kind {
            HarmonicKind::X1 => "y1".into(),
            HarmonicKind::X1X2 => "y1*y2".into(),
            HarmonicKind::ReZk(k) => format!("Re(z^{k})"),
        }
    }
}

/// `v(y) = ½ yᵀAy + b·y + c` with symmetric `A`; `Δv = tr A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: f64,
}

/// Build a quadratic on `ℝ^dim`; `a` is row-major and symmetrised.
pub fn quadratic(dim: usize, a: &[f64], b: &[f64], c: f64) -> Result<Quadratic> {
    if a.len() != dim * dim || b.len() != dim {
        return domain("quadratic needs an N×N matrix and an N-vector");
    }
    let mut sym = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            sym[i * dim + j] = 0.5 * (a[i * dim + j] + a[j * dim + i]);
        }
    }
    Ok(Quadratic { a: sym, b: b.to_vec(), c })
}

impl ScalarField for Quadratic {
    fn jet(&self, y: &[f64]) -> Result<ScalarJet> {
        let n = self.b.len();
        if y.len() != n {
            return domain(format!("quadratic lives on ℝ^{n}, got {} coordinates", y.len()));
        }
        let ay: Vec<f64> = (0..n).map(|i| (0..n).map(|j| self.a[i * n + j] * y[j]).sum()).collect();
        let value = 0.5 * crate::lift::dot(y, &ay) + crate::lift::dot(&self.b, y) + self.c;
        let gradient = ay.iter().zip(&self.b).map(|(p, q)| p + q).collect();
        Ok(ScalarJet { value, gradient, hessian: self.a.clone() })
    }

    fn is_harmonic(&self) -> bool {
        let n = self.b.len();
        (0..n).map(|i| self.a[i * n + i]).sum::<f64>() == 0.0
    }

    fn name(&self) -> String {
        "quadratic".into()
    }
}

/// Smooth profile `((s - a)(b - s) / h²)^k` on `(a, b)`, `h = (b - a)/2`, zero
/// outside; equal to 1 at the midpoint and `C^{k-1}` across the ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Profile {
    pub a: f64,
    pub b: f64,
    pub k: i32,
}

impl Profile {
    pub fn new(a: f64, b: f64, k: u32) -> Result<Self> {
        if !(a < b) || k < 3 {
            return domain(format!("bump needs a < b and order k >= 3, got ({a}, {b}), k = {k}"));
        }
        Ok(Self { a, b, k: k as i32 })
    }

    /// Value and first two derivatives at `s`.
    pub fn eval(&self, s: f64) -> (f64, f64, f64) {
        if s <= self.a || s >= self.b {
            return (0.0, 0.0, 0.0);
        }
        let h2 = ((self.b - self.a) / 2.0).powi(2);
        let q = (s - self.a) * (self.b - s) / h2;
        let q1 = (self.a + self.b - 2.0 * s) / h2;
        let q2 = -2.0 / h2;
        let k = self.k as f64;
        let p = q.powi(self.k);
        let p1 = k * q.powi(self.k - 1) * q1;
        let p2 = k * (k - 1.0) * q.powi(self.k - 2) * q1 * q1 + k * q.powi(self.k - 1) * q2;
        (p, p1, p2)
    }

    pub fn mid(&self) -> f64 {
        (self.a + self.b) / 2.0
    }
}

/// `v(y) = (1 + m y₁) P(|y|)` with `P` a bump supported in `r_in < |y| < r_out`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialBump {
    pub(crate) profile: Profile,
    pub modulation: f64,
}

pub fn radial_bump(r_in: f64, r_out: f64, k: u32, modulation: f64) -> Result<RadialBump> {
    if !(r_in > 0.0) {
        return domain("radial bump must vanish near the origin: r_in > 0");
    }
    Ok(RadialBump { profile: Profile::new(r_in, r_out, k)?, modulation })
}

impl RadialBump {
    /// `(r_in, r_out)`.
    pub fn support(&self) -> (f64, f64) {
        (self.profile.a, self.profile.b)
    }
}

/// Radial profile derivatives lifted to `ℝ^N`: value, gradient, Hessian of
/// `P(|y|)`.
pub(crate) fn radial_jet(p: &Profile, y: &[f64]) -> ScalarJet {
    let n = y.len();
    let r = crate::lift::norm_sq(y).sqrt();
    let (v, d1, d2) = p.eval(r);
    let mut j = zero_jet(n);
    j.value = v;
    if r == 0.0 || (d1 == 0.0 && d2 == 0.0) {
        return j;
    }
    for i in 0..n {
        let ei = y[i] / r;
        j.gradient[i] = d1 * ei;
        for k in 0..n {
            let ek = y[k] / r;
            let delta = if i == k { 1.0 } else { 0.0 };
            j.hessian[i * n + k] = d2 * ei * ek + d1 * (delta - ei * ek) / r;
        }
    }
    j
}

impl ScalarField for RadialBump {
    fn jet(&self, y: &[f64]) -> Result<ScalarJet> {
        let base = radial_jet(&self.profile, y);
        if self.modulation == 0.0 {
            return Ok(base);
        }
        let n = y.len();
        let m = self.modulation;
        let f = 1.0 + m * y[0];
        let mut j = base.clone();
        j.value = f * base.value;
        for i in 0..n {
            j.gradient[i] = f * base.gradient[i] + if i == 0 { m * base.value } else { 0.0 };
        }
        for i in 0..n {
            for k in 0..n {
                let mut h = f * base.hessian[i * n + k];
                if i == 0 {
                    h += m * base.gradient[k];
                }
                if k == 0 {
                    h += m * base.gradient[i];
                }
                j.hessian[i * n + k] = h;
            }
        }
        Ok(j)
    }

    fn name(&self) -> String {
        format!("radial_bump({}, {})", self.profile.a, self.profile.b)
    }
}

/// `v = w + δw³/3` on `w = s·y_axis > 0` (`s = ±1`), zero elsewhere. For
/// `δ = 0` a half-space solution; otherwise `Δv = 2δw` on the support.
/// Also usable as a time-independent space-time field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    pub axis: usize,
    pub sign: f64,
    pub delta: f64,
}

impl HalfSpace {
    pub fn positive() -> Self {
        Self { axis: 0, sign: 1.0, delta: 0.0 }
    }

    pub fn negative() -> Self {
        Self { axis: 0, sign: -1.0, delta: 0.0 }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    /// `Δv` at `y`: `2δ w⁺`.
    pub fn source(&self, y: &[f64]) -> f64 {
        2.0 * self.delta * (self.sign * y[self.axis]).max(0.0)
    }
}

impl ScalarField for HalfSpace {
    fn jet(&self, y: &[f64]) -> Result<ScalarJet> {
        let n = y.len();
        if self.axis >= n {
            return domain("half-space axis outside the dimension");
        }
        let mut j = zero_jet(n);
        let w = self.sign * y[self.axis];
        if w > 0.0 {
            j.value = w + self.delta * w.powi(3) / 3.0;
            j.gradient[self.axis] = self.sign * (1.0 + self.delta * w * w);
            j.hessian[self.axis * n + self.axis] = 2.0 * self.delta * w;
        }
        Ok(j)
    }

    fn name(&self) -> String {
        let s = if self.sign > 0.0 { "+" } else { "-" };
        format!("half_space{s}(axis {}, delta {})", self.axis, self.delta)
    }
}

impl SpaceTimeField for HalfSpace {
    fn jet(&self, x: &[f64], t: f64) -> Result<SpaceTimeJet> {
        if !(t > 0.0) {
            return domain("space-time fields live on t > 0");
        }
        let j = ScalarField::jet(self, x)?;
        let n = x.len();
        Ok(SpaceTimeJet {
            value: j.value,
            laplacian: j.laplacian(),
            gradient: j.gradient,
            dt: 0.0,
            grad_dt: vec![0.0; n],
            dtt: 0.0,
        })
    }

    fn name(&self) -> String {
        ScalarField::name(self)
    }
}
