use crate::error::{domain, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type VectorFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A bounded source term: scalar `h(y)` or vector `H(y)`.
#[derive(Clone)]
pub enum NonhomTerm {
    Zero,
    Constant(f64),
    /// `y/|y|` (zero at the origin).
    RadialUnit,
    Scalar(ScalarFn),
    Vector(VectorFn),
}

impl fmt::Debug for NonhomTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonhomTerm::Zero => write!(f, "Zero"),
            NonhomTerm::Constant(c) => write!(f, "Constant({c})"),
            NonhomTerm::RadialUnit => write!(f, "RadialUnit"),
            NonhomTerm::Scalar(_) => write!(f, "Scalar(..)"),
            NonhomTerm::Vector(_) => write!(f, "Vector(..)"),
        }
    }
}

impl NonhomTerm {
    pub fn scalar(f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        NonhomTerm::Scalar(Arc::new(f))
    }

    pub fn vector(f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        NonhomTerm::Vector(Arc::new(f))
    }

    /// Scalar value at `y`.
    pub fn eval_scalar(&self, y: &[f64]) -> Result<f64> {
        match self {
            NonhomTerm::Zero => Ok(0.0),
            NonhomTerm::Constant(c) => Ok(*c),
            NonhomTerm::Scalar(f) => Ok(f(y)),
            _ => domain("expected a scalar source term"),
        }
    }

    /// Vector value at `y` with `m` components.
    pub fn eval_vector(&self, y: &[f64], m: usize) -> Result<Vec<f64>> {
        let v = match self {
            NonhomTerm::Zero => vec![0.0; m],
            NonhomTerm::Constant(c) => vec![*c; m],
            NonhomTerm::RadialUnit => {
                let r = crate::lift::norm_sq(y).sqrt();
                if r == 0.0 {
                    vec![0.0; y.len()]
                } else {
                    y.iter().map(|c| c / r).collect()
                }
            }
            NonhomTerm::Vector(f) => f(y),
            NonhomTerm::Scalar(_) => return domain("expected a vector source term"),
        };
        if v.len() != m {
            return domain(format!("source term has {} components, expected {m}", v.len()));
        }
        Ok(v)
    }

    /// Largest sampled magnitude on the ball of the given radius in `ℝ^dim`.
    pub fn sup_estimate(&self, dim: usize, radius: f64, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sup = 0.0f64;
        let mut y = vec![0.0; dim];
        for _ in 0..samples {
            for c in y.iter_mut() {
                *c = rng.gen_range(-radius..radius);
            }
            let m = match self {
                NonhomTerm::Vector(f) => crate::lift::norm_sq(&f(&y)).sqrt(),
                NonhomTerm::RadialUnit => 1.0,
                other => other.eval_scalar(&y).map(f64::abs).unwrap_or(0.0),
            };
            sup = sup.max(m);
        }
        sup
    }
}
