use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {name} = {value} must satisfy {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("constant undefined: {0}")]
    Infeasible(String),

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("containment not certified: {0}")]
    Uncertified(String),

    #[error(
        "eigensolver did not converge after {iterations} iterations \
         ({converged}/{requested} pairs converged, max residual {max_residual:e})"
    )]
    NonConvergence {
        iterations: usize,
        converged: usize,
        requested: usize,
        max_residual: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(name: &'static str, value: impl Into<f64>, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value: value.into(),
        expected,
    }
}
