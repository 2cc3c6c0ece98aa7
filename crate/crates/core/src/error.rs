//! Error type shared by every module.
//!
//! Each variant renders with its own name as a prefix so that command-line
//! diagnostics and the C error codes can name the failing case.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidPoint: lambda must be positive and finite (got lambda={lambda}, t={t})")]
    InvalidPoint { lambda: f64, t: f64 },

    #[error("InvalidIsometry: ad+bc must be positive and finite (got {0})")]
    InvalidIsometry(f64),

    #[error("DuplicatePoints: cross-ratio needs four pairwise distinct points")]
    DuplicatePoints,

    #[error("NegativeArgument: expected x >= 0, got {0}")]
    NegativeArgument(f64),

    #[error("BadParameters: {0}")]
    BadParameters(String),

    #[error("DegenerateDomain: {0}")]
    DegenerateDomain(String),

    #[error("DegenerateQuad: the quadrilateral needs a > 1 (got a={0})")]
    DegenerateQuad(f64),

    #[error("DegenerateAnnulus: the annulus needs r1 < r2 (got r1={r1}, r2={r2})")]
    DegenerateAnnulus { r1: f64, r2: f64 },

    #[error("EmptyFamily: {requested} curves requested, at least {minimum} required")]
    EmptyFamily { requested: usize, minimum: usize },

    #[error("QuadratureFailure: error estimate {estimate:e} exceeds tolerance {tol:e} after {panels} panels")]
    QuadratureFailure { estimate: f64, tol: f64, panels: usize },

    #[error("NotNested: the first circle must lie strictly inside the second")]
    NotNested,

    #[error("IoFailure: {0}")]
    IoFailure(String),
}

impl Error {
    /// Name of the error case, as used in diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidPoint { .. } => "InvalidPoint",
            Error::InvalidIsometry(_) => "InvalidIsometry",
            Error::DuplicatePoints => "DuplicatePoints",
            Error::NegativeArgument(_) => "NegativeArgument",
            Error::BadParameters(_) => "BadParameters",
            Error::DegenerateDomain(_) => "DegenerateDomain",
            Error::DegenerateQuad(_) => "DegenerateQuad",
            Error::DegenerateAnnulus { .. } => "DegenerateAnnulus",
            Error::EmptyFamily { .. } => "EmptyFamily",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::NotNested => "NotNested",
            Error::IoFailure(_) => "IoFailure",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}
