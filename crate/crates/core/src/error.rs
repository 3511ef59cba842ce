use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("operands live on different graded spaces")]
    SpaceMismatch,
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("homogeneity violated: {0}")]
    Homogeneity(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("not alternating: {0}")]
    NotAlternating(String),
    #[error("not a structure: {0}")]
    NotAStructure(String),
    #[error("not a cocycle at order {order}: {detail}")]
    NotACocycle { order: usize, detail: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("truncation mismatch: {0} vs {1}")]
    Truncation(usize, usize),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("verification failed at order {order}: {detail}")]
    Verification { order: usize, detail: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}
