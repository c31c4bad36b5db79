use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("potential is not strictly concave near u = {u} (second derivative {d2})")]
    NonConcave { u: f64, d2: f64 },

    #[error("moment coordinate {x} lies outside the open interval (0, 1)")]
    OutsideUnitInterval { x: f64 },

    #[error("root solve could not bracket the target: {0}")]
    Bracket(String),

    #[error("root solve did not converge: {0}")]
    NoConvergence(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("profile is not in class G: {0}")]
    NotInClassG(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("profile evaluation failed at x = {x} (value {value})")]
    Evaluation { x: f64, value: f64 },

    #[error("LDLᵀ factorization broke down at shift {shift}")]
    Breakdown { shift: f64 },

    #[error("mass matrix is not positive definite (pivot {pivot} at row {row})")]
    MassNotPositive { row: usize, pivot: f64 },

    #[error("mesh ladder did not converge up to N = {n_max} (worst relative change {worst_change:e})")]
    MeshBudget { n_max: usize, worst_change: f64 },

    #[error("zero scan exhausted its budget at z = {z_max} with {found} of {wanted} zeros")]
    ScanBudget { z_max: f64, found: usize, wanted: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of an iterative numerical procedure, as opposed to
    /// rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Bracket(_)
                | Error::NoConvergence(_)
                | Error::Breakdown { .. }
                | Error::MeshBudget { .. }
                | Error::ScanBudget { .. }
        )
    }
}
