//! Crate-wide error type.

use crate::scalar::Mode;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed-mode arithmetic: {left:?} combined with {right:?}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("division by zero")]
    DivisionByZero,

    #[error("weight matrix has rank {rank}, expected full rank {torus_rank}")]
    RankDeficient { rank: usize, torus_rank: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "{relations} relations on {coordinates} coordinates leave no positive-dimensional cone"
    )]
    TooManyRelations {
        relations: usize,
        coordinates: usize,
    },

    #[error(
        "monomial generators are not minimal: generator {divisor} divides generator {multiple}"
    )]
    NonMinimalGenerators { divisor: usize, multiple: usize },

    #[error("zero weight encountered; the Reeb vector lies on the cone boundary")]
    ZeroWeight,

    #[error("Reeb vector is outside the cone: denominator weight {index} pairs nonpositively")]
    NotInReebCone { index: usize },

    #[error("pole order mismatch: declared dimension {declared}, observed pole order {observed}")]
    PoleOrderMismatch { declared: usize, observed: i64 },

    #[error("ring dimension {dimension} is too small; expansions require dimension >= 2")]
    DimensionTooSmall { dimension: usize },

    #[error("Reeb vector is not on the Gorenstein cross-section: theta weight {value}, required level {level}")]
    NotOnCrossSection { value: String, level: String },

    #[error("direction is not tangent to the cross-section: theta weight {value} != 0")]
    NotTangent { value: String },

    #[error("function charge {value} is not positive at this Reeb vector")]
    NonpositiveCharge { value: String },

    #[error("infeasible start for volume minimization: {reason}")]
    InfeasibleStart { reason: String },

    #[error(
        "volume minimization did not converge after {iterations} iterations \
         (projected gradient norm {gradient_norm:.3e}); best iterate {best:?}"
    )]
    NotConverged {
        iterations: usize,
        gradient_norm: f64,
        best: Vec<f64>,
    },

    #[error("tangent Hessian of the volume is not positive definite at iteration {iteration}")]
    HessianNotPd { iteration: usize },

    #[error("operation requires an exact rational Reeb vector")]
    IrrationalInput,

    #[error("character evaluation requires t > 0")]
    NonpositiveT,

    #[error("finite-difference step leaves the Reeb cone")]
    StepLeavesCone,

    #[error(
        "Reeb vector is too close to the cone boundary: inequality {index} has insufficient margin"
    )]
    TooCloseToBoundary { index: usize },

    #[error("the Reeb cone is empty: no vector pairs positively with every weight")]
    EmptyReebCone,

    #[error("parse error: {message}")]
    Parse { message: String },

    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("consistency check failed in {context}: expected {expected}, got {actual}")]
    ConsistencyCheckFailed {
        context: &'static str,
        expected: String,
        actual: String,
    },

    #[error("leading Laurent coefficient a0 = {value} is not positive; input is not a valid graded ring")]
    NonpositiveVolume { value: String },

    #[error("{message}")]
    InvalidArgument { message: String },
}

impl Error {
    pub fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument {
            message: message.into(),
        }
    }

    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
