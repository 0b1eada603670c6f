use thiserror::Error;

use crate::quadrature::QuadratureError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("passivity violated: |M| = {mutual} must be below L = {inductance}")]
    Passivity { inductance: f64, mutual: f64 },

    #[error("coupling m = {0} outside the thin-wire model (must be < 1)")]
    ModelValidity(f64),

    #[error("time step {dt} exceeds the stability guard {limit} (units of L/R)")]
    Stability { dt: f64, limit: f64 },

    #[error("{0} is not applicable to this dielectric model")]
    NotApplicable(&'static str),

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
