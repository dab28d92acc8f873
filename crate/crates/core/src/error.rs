use crate::phase_space::PhaseSpacePoint;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("non-finite integrand value at {point:?}")]
    NonFinite { point: PhaseSpacePoint },

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("invalid covariance matrix: {0}")]
    InvalidCovariance(String),

    #[error("unphysical covariance matrix: smallest symplectic eigenvalue {nu_min_plain} < 1/2")]
    Unphysical { nu_min_plain: f64 },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
