use thiserror::Error;

/// Errors raised by the lifting, weight, quadrature and functional routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The configuration is well formed but not handled by this routine.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A quadrature failed to settle after the allowed number of refinements.
    #[error("{what} did not converge: last estimate {last:e}, previous {previous:e}")]
    Accuracy {
        what: String,
        last: f64,
        previous: f64,
    },

    /// A ratio was requested with a denominator below the working floor.
    #[error("degenerate denominator {value:e} in {what}")]
    Degenerate { what: &'static str, value: f64 },

    /// A sweep failed while evaluating the curve at `param`.
    #[error("curve evaluation failed at parameter {param}: {source}")]
    Curve { param: f64, source: Box<Error> },

    /// Input data could not be read or parsed.
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
