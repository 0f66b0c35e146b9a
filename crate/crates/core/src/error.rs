use thiserror::Error;

use crate::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration is not jammed")]
    NotJammed,

    #[error("{what} = {requested} exceeds the enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("table covers lengths up to {have}, but {needed} are needed")]
    InsufficientTable { needed: usize, have: usize },

    #[error("transfer system is singular")]
    SingularSystem,

    #[error("negative coefficient {value} at (n = {n}, k = {k})")]
    NegativeCoefficient { n: usize, k: usize, value: String },

    #[error("invalid denominator: {0}")]
    InvalidDenominator(String),

    #[error("density {rho} is outside the open support ({lo}, {hi})")]
    OutOfSupport { rho: f64, lo: f64, hi: f64 },

    #[error("Newton iteration did not converge at density {rho} (residual {residual:e})")]
    NoConvergence { rho: f64, residual: f64 },

    #[error("pattern `{pattern}` does not support a {m}x{n} grid: {reason}")]
    UnsupportedSize {
        pattern: &'static str,
        m: usize,
        n: usize,
        reason: &'static str,
    },

    #[error("no evolutionary stable configuration exists on a {m}x{n} grid: {reason}")]
    NoESExists {
        m: usize,
        n: usize,
        reason: &'static str,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("family `{family}` is not supported by {op}")]
    UnsupportedFamily { family: Family, op: &'static str },

    #[error("parse error: {0}")]
    Parse(String),
}
