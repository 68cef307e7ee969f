use alloc::string::String;
use core::fmt;

/// Errors produced by the deblurring library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A construction parameter is out of its valid range.
    InvalidParameter(String),
    /// Vector or image sizes do not match the operator.
    DimensionMismatch { expected: usize, got: usize },
    /// The operator does not satisfy a structural requirement (e.g. the DCT
    /// basis needs symmetric blur factors).
    UnsupportedOperator(String),
    /// The modified projection problem has no unique minimizer for this
    /// operator/basis/k combination.
    UniquenessViolation(String),
    /// A quality metric is undefined for the given inputs.
    UndefinedMetric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::UnsupportedOperator(msg) => write!(f, "unsupported operator: {msg}"),
            Error::UniquenessViolation(msg) => write!(f, "uniqueness violation: {msg}"),
            Error::UndefinedMetric(msg) => write!(f, "undefined metric: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
