use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid potential parameters: {0}")]
    InvalidParams(String),

    #[error("level index {0} out of range (expected 0..=3)")]
    InvalidLevel(usize),

    #[error("quadrature did not converge after {panels} panels (last change {change:e})")]
    QuadratureNonConvergence { panels: usize, change: f64 },

    #[error("finite-difference step {0:e} underflows at the sample point")]
    StepUnderflow(f64),

    #[error("coupling g must be non-negative and finite, got {0}")]
    NegativeCoupling(f64),

    #[error("invalid drive: {0}")]
    InvalidDrive(String),

    #[error("invalid initial state: {0}")]
    InvalidInitialState(String),

    #[error("invalid integration request: {0}")]
    InvalidRun(String),

    #[error("integrator step {0:e} underflows")]
    IntegratorStepUnderflow(f64),

    #[error("norm drift {drift:e} exceeds bound {bound:e} at t = {t}")]
    NormDrift { drift: f64, bound: f64, t: f64 },

    #[error("density grid too coarse: integrated norm {norm} misses 1 by more than {tol:e}")]
    GridTooCoarse { norm: f64, tol: f64 },
}
