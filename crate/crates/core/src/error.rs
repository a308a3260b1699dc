use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at nonpositive integer argument {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("truncation bound not met: {0}")]
    Truncation(String),
    #[error("spectrum outside [0, 1]: {0}")]
    Spectrum(String),
    #[error("operator 1 - K is near-singular: {0}")]
    NearSingular(String),
    #[error("insufficient points: {0}")]
    InsufficientPoints(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short stable tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::Domain(_) => "domain",
            Error::InvalidParameters(_) => "invalid-parameters",
            Error::Numerical(_) => "numerical",
            Error::Truncation(_) => "truncation",
            Error::Spectrum(_) => "spectrum",
            Error::NearSingular(_) => "near-singular",
            Error::InsufficientPoints(_) => "insufficient-points",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
