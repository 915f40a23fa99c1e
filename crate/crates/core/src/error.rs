use thiserror::Error;

/// Errors produced by the bug-spectra library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported component at host vertex {index}: only complete graphs are supported")]
    UnsupportedComponent { index: usize },

    #[error("Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    JacobiConvergence { sweeps: usize, off_norm: f64 },

    #[error("power iteration hit the cap of {iterations} iterations (residual {residual:e})")]
    PowerIteration { iterations: usize, residual: f64 },

    #[error("Perron vector has a non-positive entry at index {index}")]
    NonPositivePerronVector { index: usize },

    #[error("cardinality mismatch: structured spectrum has {structured} values, dense has {dense}")]
    CardinalityMismatch { structured: usize, dense: usize },

    #[error("interlacing needs lengths m and m+1, got {inner} and {outer}")]
    InterlacingLength { inner: usize, outer: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
