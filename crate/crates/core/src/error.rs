use thiserror::Error;

/// Errors raised by the physics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("perturbative regime violated: eps = {eps} (must be < {limit})")]
    PerturbativeRegime { eps: f64, limit: f64 },

    #[error("log-gamma pole at nonpositive integer {0}")]
    GammaPole(f64),

    #[error("point (t = {t}, z = {z}) lies outside the right Rindler wedge z > |t|")]
    OutsideWedge { t: f64, z: f64 },

    #[error("comparison defined at nu = omega0 only (x = {x}, y = {y})")]
    FrequencyMismatch { x: f64, y: f64 },

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
