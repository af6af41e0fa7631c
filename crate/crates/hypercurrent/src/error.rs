use thiserror::Error;

/// Errors produced by construction, integration and bound evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("inverse temperature must be strictly positive, got {0}")]
    NonPositiveBeta(f64),

    #[error("invalid transmission: {0}")]
    InvalidTransmission(String),

    #[error("invalid weight function: {0}")]
    InvalidWeight(String),

    #[error("invalid quadrature spec: {0}")]
    InvalidQuadratureSpec(String),

    #[error(
        "quadrature did not converge within {max_subdivisions} subdivisions \
         (best estimate {value:e} with error estimate {err_estimate:e})"
    )]
    QuadratureDidNotConverge {
        value: f64,
        err_estimate: f64,
        max_subdivisions: usize,
    },

    #[error("integrand returned a non-finite value at eps = {eps}")]
    NonFiniteIntegrand { eps: f64 },

    #[error("degenerate current: variance vanishes (weight is zero on the support of the transmission)")]
    DegenerateCurrent,

    #[error("energy and particle fluctuations are fully correlated (rho_F = {rho}); the linear optimum is undefined")]
    DegenerateCorrelation { rho: f64 },

    #[error("baths are at equilibrium: {context}")]
    Equilibrium { context: &'static str },

    #[error("delta_beta = 0 (isothermal baths): the crossover energy is undefined")]
    IsothermalGradient,

    #[error("counting field eta = {eta} leaves the analyticity domain of the generating function (log argument {arg})")]
    CgfDomain { eta: f64, arg: f64 },

    #[error("degenerate grid problem: {0}")]
    DegenerateGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
