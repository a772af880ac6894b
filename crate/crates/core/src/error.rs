use thiserror::Error;

use crate::hopf::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix is not hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("linear system is inconsistent (residual {residual:.3e})")]
    NoSolution { residual: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("malformed definition: {tensor}: {detail}")]
    Malformed { tensor: String, detail: String },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("axiom check failed: {}", .0.failures().join(", "))]
    AxiomFailure(Box<AxiomReport>),

    #[error("operands belong to different quantum groups")]
    OwnerMismatch,

    #[error("internal consistency failure: {what} (residual {residual:.3e})")]
    Internal { what: String, residual: f64 },

    #[error("random element stayed degenerate after {attempts} attempts: {what}")]
    Degenerate { what: String, attempts: usize },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("not an idempotent state: {0}")]
    InvalidIdempotent(String),

    #[error("ideal is not closed under right convolution (residual {residual:.3e})")]
    NotTwoSided { residual: f64 },

    #[error("subspace is not a left ideal (residual {residual:.3e})")]
    NotLeftIdeal { residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid action: {invariant} fails at group element {element} (residual {residual:.3e})")]
    InvalidAction {
        invariant: String,
        element: usize,
        residual: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn internal(what: impl Into<String>, residual: f64) -> Self {
        Error::Internal {
            what: what.into(),
            residual,
        }
    }

    pub(crate) fn malformed(tensor: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Malformed {
            tensor: tensor.into(),
            detail: detail.into(),
        }
    }
}
