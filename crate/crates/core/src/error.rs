use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid not closed under negation")]
    GridNotSymmetric,
    #[error("grid needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("{what} is singular at zero frequency")]
    ZeroFrequency { what: &'static str },
    #[error("unit mismatch: expected {expected}, found {found}")]
    UnitMismatch { expected: String, found: String },
    #[error("detuned operation is not supported (detuning = {0} rad/s)")]
    Detuned(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive<T: crate::Real>(name: &'static str, v: T) -> Result<T> {
    if v > T::zero() && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonPositive { name, value: v.to_f64_lossy() })
    }
}

pub(crate) fn non_negative<T: crate::Real>(name: &'static str, v: T) -> Result<T> {
    if v >= T::zero() && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Negative { name, value: v.to_f64_lossy() })
    }
}
