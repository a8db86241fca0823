use super::{ScalarField, ScalarJet};
use crate::error::{domain, Result};

/// Graph profiles over `ℝ^N` (or `ℝ^d` for flows).
#[derive(Debug, Clone, PartialEq)]
pub enum GraphKind {
    /// `v ≡ c`
    Plane { c: f64 },
    /// `v = a·y + c`
    Linear { a: Vec<f64>, c: f64 },
    /// `v = ε|y|²/2`
    Paraboloid { eps: f64 },
}

/// A graph `{(y, v(y))}`; the profiles are time-independent, so as a flow
/// `∂_t u = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSurface {
    pub kind: GraphKind,
}

pub fn graph_catalog(kind: GraphKind) -> GraphSurface {
    GraphSurface { kind }
}

impl GraphSurface {
    pub fn plane(c: f64) -> Self {
        graph_catalog(GraphKind::Plane { c })
    }

    pub fn linear(a: Vec<f64>, c: f64) -> Self {
        graph_catalog(GraphKind::Linear { a, c })
    }

    pub fn paraboloid(eps: f64) -> Self {
        graph_catalog(GraphKind::Paraboloid { eps })
    }

    /// Minimal when the Hessian vanishes (planes).
    pub fn is_minimal(&self) -> bool {
        !matches!(self.kind, GraphKind::Paraboloid { eps } if eps != 0.0)
    }

    /// Jet of the profile together with `∂_t u`.
    pub fn flow_jet(&self, x: &[f64], t: f64) -> Result<(ScalarJet, f64)> {
        if !(t > 0.0) {
            return domain("graph flows live on t > 0");
        }
        Ok((self.jet(x)?, 0.0))
    }
}

impl ScalarField for GraphSurface {
    fn jet(&self, y: &[f64]) -> Result<ScalarJet> {
        let n = y.len();
        let mut j = ScalarJet { value: 0.0, gradient: vec![0.0; n], hessian: vec![0.0; n * n] };
        match &self.kind {
            GraphKind::Plane { c } => j.value = *c,
            GraphKind::Linear { a, c } => {
                if a.len() != n {
                    return domain(format!("linear graph has slope in ℝ^{}, point in ℝ^{n}", a.len()));
                }
                j.value = crate::lift::dot(a, y) + c;
                j.gradient.copy_from_slice(a);
            }
            GraphKind::Paraboloid { eps } => {
                j.value = eps * crate::lift::norm_sq(y) / 2.0;
                for i in 0..n {
                    j.gradient[i] = eps * y[i];
                    j.hessian[i * n + i] = *eps;
                }
            }
        }
        Ok(j)
    }

    fn is_harmonic(&self) -> bool {
        self.is_minimal()
    }

    fn name(&self) -> String {
        match &self.kind {
            GraphKind::Plane { c } => format!("plane({c})"),
            GraphKind::Linear { .. } => "linear".into(),
            GraphKind::Paraboloid { eps } => format!("paraboloid({eps})"),
        }
    }
}
