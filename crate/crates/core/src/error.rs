use thiserror::Error;

/// Errors raised by the interferometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "quadrature did not reach tolerance: estimated error {achieved:e}, requested {requested:e}"
    )]
    Quadrature { achieved: f64, requested: f64 },

    #[error("unsupported space dimension d = {0} (expected 1 or 3)")]
    UnsupportedDimension(u32),

    #[error("unsupported method: {0}")]
    UnsupportedMethod(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parameters not identifiable: {0}")]
    Identifiability(String),

    #[error("fit did not converge after {iterations} iterations (best cost {cost:e})")]
    NonConvergence {
        iterations: usize,
        cost: f64,
        best: Vec<f64>,
    },

    #[error("malformed data: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
