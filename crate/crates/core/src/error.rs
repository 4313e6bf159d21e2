use thiserror::Error;

/// Errors shared by every module of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size cap exceeded for {what}: {actual} > {limit}")]
    SizeCap {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("state cap exceeded after {explored} states")]
    StateCap { explored: usize },

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("family promise violated: K_{{{},{}}} found on {left:?} x {right:?}", left.len(), right.len())]
    FamilyViolation { left: Vec<usize>, right: Vec<usize> },

    #[error("retry budget exhausted: {0}")]
    RetryBudget(String),

    #[error("unknown provenance: {0}")]
    UnknownProvenance(String),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
