use thiserror::Error;

/// Errors raised by the double-well computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: must be finite and strictly positive")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("energy at or above barrier; no tunneling regime (eta = {eta})")]
    AboveBarrier { eta: f64 },

    #[error("eta = {eta} is outside the validity range (0, {boundary})")]
    OutsideValidity { eta: f64, boundary: f64 },

    #[error("1 + epsilon = {value} is not positive")]
    NonPositiveLevel { value: f64 },

    #[error("perturbation basis truncation {0} is too small (need at least 5 states)")]
    Truncation(usize),

    #[error("quadrature did not converge: estimate {estimate:e} exceeds tolerance {tolerance:e} after {evaluations} evaluations")]
    Quadrature {
        estimate: f64,
        tolerance: f64,
        evaluations: usize,
    },

    #[error("tolerance {0:e} outside the supported range [1e-13, 1e-6]")]
    Tolerance(f64),

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("splitting below numerical resolution (splitting {splitting:e}, discretization estimate {estimate:e})")]
    BelowResolution { splitting: f64, estimate: f64 },

    #[error("invalid sweep: {0}")]
    Sweep(String),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    /// True for failures of a numerical method rather than of its inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Quadrature { .. } | Error::Eigen(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
