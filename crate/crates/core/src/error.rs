use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("result exceeds the representable floating-point range")]
    Overflow,

    #[error("no convergence after {effort} steps (last error estimate {error_estimate:e})")]
    NoConvergence { effort: usize, error_estimate: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// The leading factor `a + n·b` is not positive, so the term is infinite.
    #[error("divergent index: a + n*b = {0} is not positive")]
    Divergent(f64),
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Param(msg.into())
}
