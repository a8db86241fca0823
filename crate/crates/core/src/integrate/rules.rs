//! Gauss rules from the Golub–Welsch eigenvalue problem and product rules on
//! spheres. All weights are normalised to sum to one, so a rule computes the
//! mean of an integrand under the corresponding probability measure.

use crate::error::{domain, unsupported, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and probability weights of a one-dimensional Gauss rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`.
    pub fn mean(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Family {
    Jacobi,
    Laguerre,
}

type Key = (Family, usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<Key, Arc<GaussRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<GaussRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: Key, build: impl FnOnce() -> GaussRule) -> Arc<GaussRule> {
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Arc::clone(r);
    }
    let rule = Arc::new(build());
    cache().lock().unwrap().entry(key).or_insert(rule).clone()
}

fn golub_welsch(diag: Vec<f64>, offdiag: Vec<f64>) -> GaussRule {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = offdiag[i];
            m[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1 / total).collect(),
    }
}

/// Gauss–Jacobi rule for the weight `(1 - z)^α (1 + z)^β` on `[-1, 1]`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Arc<GaussRule>> {
    if n == 0 {
        return domain("a Gauss rule needs at least one node");
    }
    if !(alpha > -1.0 && beta > -1.0) {
        return domain(format!("Jacobi exponents must exceed -1, got {alpha}, {beta}"));
    }
    let key = (Family::Jacobi, n, alpha.to_bits(), beta.to_bits());
    Ok(cached(key, || {
        let ab = alpha + beta;
        let diag = (0..n)
            .map(|k| {
                if k == 0 {
                    (beta - alpha) / (ab + 2.0)
                } else {
                    let s = 2.0 * k as f64 + ab;
                    (beta * beta - alpha * alpha) / (s * (s + 2.0))
                }
            })
            .collect();
        let off = (1..n)
            .map(|k| {
                let kf = k as f64;
                let s = 2.0 * kf + ab;
                let b = if k == 1 {
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
                } else {
                    4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                        / (s * s * (s + 1.0) * (s - 1.0))
                };
                b.sqrt()
            })
            .collect();
        golub_welsch(diag, off)
    }))
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<Arc<GaussRule>> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Gauss–Laguerre rule for the weight `z^α e^{-z}` on `[0, ∞)`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<Arc<GaussRule>> {
    if n == 0 {
        return domain("a Gauss rule needs at least one node");
    }
    if !(alpha > -1.0) {
        return domain(format!("Laguerre exponent must exceed -1, got {alpha}"));
    }
    let key = (Family::Laguerre, n, alpha.to_bits(), 0);
    Ok(cached(key, || {
        let diag = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
        let off = (1..n).map(|k| (k as f64 * (k as f64 + alpha)).sqrt()).collect();
        golub_welsch(diag, off)
    }))
}

/// Angular rule family on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngularRule {
    /// Gauss–Gegenbauer in each polar angle, trapezoid on the circle.
    #[default]
    ProductGauss,
    /// The tabulated 26-point rule of degree 7 on `S²`.
    Lebedev,
    /// Midpoint rule in each angle with the surface Jacobian as weight.
    TensorTrapezoid,
}

/// Points and probability weights on the unit sphere `S^{dim-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub dim: usize,
    /// Row-major, `dim` coordinates per point.
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.points[k * self.dim..(k + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.points.chunks(self.dim).zip(self.weights.iter().copied())
    }
}

/// Largest sphere dimension accepted by the product rules.
pub const MAX_SPHERE_DIM: usize = 6;

fn circle(m: usize) -> SphereRule {
    let m = m.max(4).div_ceil(4) * 4;
    let mut points = Vec::with_capacity(2 * m);
    for k in 0..m {
        let th = 2.0 * PI * (k as f64 + 0.5) / m as f64;
        points.push(th.cos());
        points.push(th.sin());
    }
    SphereRule { dim: 2, points, weights: vec![1.0 / m as f64; m] }
}

fn two_points() -> SphereRule {
    SphereRule { dim: 1, points: vec![-1.0, 1.0], weights: vec![0.5, 0.5] }
}

fn product_gauss(dim: usize, m: usize) -> Result<SphereRule> {
    match dim {
        1 => return Ok(two_points()),
        2 => return Ok(circle(2 * m)),
        _ => {}
    }
    let e = (dim as f64 - 3.0) / 2.0;
    let polar = gauss_jacobi(m.max(2), e, e)?;
    let sub = product_gauss(dim - 1, m)?;
    let mut points = Vec::with_capacity(polar.len() * sub.len() * dim);
    let mut weights = Vec::with_capacity(polar.len() * sub.len());
    for (&z, &wz) in polar.nodes.iter().zip(&polar.weights) {
        let s = (1.0 - z * z).max(0.0).sqrt();
        for (p, w) in sub.iter() {
            points.push(z);
            points.extend(p.iter().map(|c| s * c));
            weights.push(wz * w);
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(SphereRule { dim, points, weights })
}

fn lebedev26() -> SphereRule {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut push = |p: [f64; 3], w: f64| {
        points.extend_from_slice(&p);
        weights.push(w);
    };
    for axis in 0..3 {
        for s in [-1.0, 1.0] {
            let mut p = [0.0; 3];
            p[axis] = s;
            push(p, 1.0 / 21.0);
        }
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for si in [-h, h] {
            for sj in [-h, h] {
                let mut p = [0.0; 3];
                p[i] = si;
                p[j] = sj;
                push(p, 4.0 / 105.0);
            }
        }
    }
    let c = 1.0 / 3f64.sqrt();
    for a in [-c, c] {
        for b in [-c, c] {
            for e in [-c, c] {
                push([a, b, e], 9.0 / 280.0);
            }
        }
    }
    SphereRule { dim: 3, points, weights }
}

fn tensor_trapezoid(dim: usize, m: usize) -> Result<SphereRule> {
    match dim {
        1 => return Ok(two_points()),
        2 => return Ok(circle(2 * m)),
        3 => {}
        _ => return unsupported(format!("tensor-trapezoid rule is defined up to S², got S^{}", dim - 1)),
    }
    let ring = circle(2 * m);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for i in 0..m {
        let th = PI * (i as f64 + 0.5) / m as f64;
        let (s, c) = th.sin_cos();
        for (p, w) in ring.iter() {
            points.extend_from_slice(&[c, s * p[0], s * p[1]]);
            weights.push(s * w);
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(SphereRule { dim: 3, points, weights })
}

/// Build an angular rule on `S^{dim-1}` with resolution `m` per polar angle.
pub fn sphere_rule(dim: usize, rule: AngularRule, m: usize) -> Result<SphereRule> {
    if dim == 0 || m == 0 {
        return domain("sphere rule needs dim >= 1 and resolution >= 1");
    }
    if dim > MAX_SPHERE_DIM {
        return unsupported(format!(
            "deterministic angular quadrature is limited to dimension {MAX_SPHERE_DIM}, got {dim}; use Monte Carlo"
        ));
    }
    match rule {
        AngularRule::ProductGauss => product_gauss(dim, m),
        AngularRule::Lebedev if dim == 3 => Ok(lebedev26()),
        AngularRule::Lebedev if dim < 3 => product_gauss(dim, m),
        AngularRule::Lebedev => unsupported("the tabulated rule lives on S² only"),
        AngularRule::TensorTrapezoid => tensor_trapezoid(dim, m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(10).unwrap();
        // mean of z^k on [-1, 1] is 1/(k+1) for even k
        for k in (0..19).step_by(2) {
            assert_relative_eq!(r.mean(|z| z.powi(k)), 1.0 / (k as f64 + 1.0), max_relative = 1e-13);
        }
    }

    #[test]
    fn legendre_known_nodes() {
        let r = gauss_legendre(2).unwrap();
        assert_relative_eq!(r.nodes[1], 1.0 / 3f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(r.weights[0], 0.5, max_relative = 1e-14);
    }

    #[test]
    fn jacobi_moments_match_beta_function() {
        // E[u] for u = (1+z)/2 ~ Beta(β+1, α+1) equals (β+1)/(α+β+2)
        for &(a, b) in &[(0.5, -0.5), (3.5, 0.0), (40.0, 0.5), (-0.5, -0.5)] {
            let r = gauss_jacobi(12, a, b).unwrap();
            let m1 = r.mean(|z| (1.0 + z) / 2.0);
            assert_relative_eq!(m1, (b + 1.0) / (a + b + 2.0), max_relative = 1e-12);
            let m2 = r.mean(|z| ((1.0 + z) / 2.0).powi(2));
            let want = (b + 1.0) * (b + 2.0) / ((a + b + 2.0) * (a + b + 3.0));
            assert_relative_eq!(m2, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn laguerre_moments_match_gamma() {
        let r = gauss_laguerre(16, -0.5).unwrap();
        // E[z^k] = Γ(α+1+k)/Γ(α+1) = (1/2)(3/2)...(k-1/2)
        let mut want = 1.0;
        for k in 0..10 {
            assert_relative_eq!(r.mean(|z| z.powi(k)), want, max_relative = 1e-11);
            want *= k as f64 + 0.5;
        }
    }

    fn sphere_moment(dim: usize, rule: AngularRule) -> (f64, f64, f64) {
        let s = sphere_rule(dim, rule, 8).unwrap();
        let m2: f64 = s.iter().map(|(p, w)| w * p[0].powi(2)).sum();
        let m4: f64 = s.iter().map(|(p, w)| w * p[0].powi(4)).sum();
        let total: f64 = s.weights.iter().sum();
        (total, m2, m4)
    }

    #[test]
    fn sphere_rules_reproduce_moments() {
        // E[ω₁²] = 1/N, E[ω₁⁴] = 3/(N(N+2)) for uniform ω on S^{N-1}
        for dim in 1..=5 {
            let (tot, m2, m4) = sphere_moment(dim, AngularRule::ProductGauss);
            let nf = dim as f64;
            assert_relative_eq!(tot, 1.0, max_relative = 1e-14);
            assert_relative_eq!(m2, 1.0 / nf, max_relative = 1e-13);
            assert_relative_eq!(m4, 3.0 / (nf * (nf + 2.0)), max_relative = 1e-13);
        }
        let (tot, m2, m4) = sphere_moment(3, AngularRule::Lebedev);
        assert_relative_eq!(tot, 1.0, max_relative = 1e-14);
        assert_relative_eq!(m2, 1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(m4, 0.2, max_relative = 1e-14);
        // second order in the resolution
        let (tot, m2, _) = sphere_moment(3, AngularRule::TensorTrapezoid);
        assert_relative_eq!(tot, 1.0, max_relative = 1e-14);
        let s = sphere_rule(3, AngularRule::TensorTrapezoid, 32).unwrap();
        let fine: f64 = s.iter().map(|(p, w)| w * p[0].powi(2)).sum();
        let (e8, e32) = ((m2 - 1.0 / 3.0).abs(), (fine - 1.0 / 3.0).abs());
        assert!(e8 < 2e-2 && e32 < e8 / 10.0, "{e8} {e32}");
    }

    #[test]
    fn half_space_fraction_is_exact() {
        for dim in 1..=4 {
            let s = sphere_rule(dim, AngularRule::ProductGauss, 6).unwrap();
            let frac: f64 = s.iter().filter(|(p, _)| p[0] > 0.0).map(|(_, w)| w).sum();
            assert_relative_eq!(frac, 0.5, max_relative = 1e-14);
        }
    }

    #[test]
    fn high_dimension_is_unsupported() {
        assert!(sphere_rule(7, AngularRule::ProductGauss, 4).is_err());
        assert!(sphere_rule(4, AngularRule::Lebedev, 4).is_err());
    }
}
