use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at {arg}")]
    Pole { arg: Complex64 },

    #[error("integral diverges: Re(p+q) = {re_sum} must be negative")]
    Divergence { re_sum: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("{0}")]
    Domain(String),

    #[error("operation requires the {required} regime, got {actual}")]
    UnsupportedRegime { required: &'static str, actual: String },

    #[error("integrand is not finite at x = {x}")]
    Evaluation { x: f64 },

    #[error("quadrature stopped at error estimate {abs_error_est:e} above the target")]
    NotConverged { abs_error_est: f64 },

    #[error("sine prefactor degenerates (0/0 or 0*inf)")]
    Degenerate,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
