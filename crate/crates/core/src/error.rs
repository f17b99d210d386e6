use thiserror::Error;

use crate::search::ExtremalResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not symmetric: max asymmetry {asymmetry:e} exceeds tolerance {tol:e}")]
    AsymmetricInput { asymmetry: f64, tol: f64 },

    #[error("symplectic spectrum is not real (discriminant {discriminant:e})")]
    ComplexSpectrum { discriminant: f64 },

    #[error("covariance matrix is singular or indefinite (det = {det:e})")]
    SingularCovariance { det: f64 },

    #[error("squeeze factor must be positive, got {0}")]
    NonPositiveSqueeze(f64),

    #[error("covariance matrix violates the uncertainty relation V >= (i/2) sigma")]
    NotPhysical,

    /// The search ran out of evaluations before the refinement converged.
    /// Carries the best result found so far.
    #[error("evaluation budget exhausted after {} evaluations", .0.evaluations)]
    BudgetExhausted(Box<ExtremalResult>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no physical state after {0} draws")]
    SamplingStalled(u64),
}
