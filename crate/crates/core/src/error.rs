use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The fan description could not be read.
    #[error("malformed fan description: {0}")]
    Parse(String),

    /// The fan violates one or more structural invariants.
    #[error("invalid fan: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("degenerate fan: d = n = {0}, there are no linear relations and no integration cycle")]
    Degenerate(usize),

    #[error("linear algebra: {0}")]
    Linalg(#[from] LinalgError),

    /// A primitive collection admits no nonnegative expression in any cone.
    #[error("primitive collection {collection:?} has no nonnegative expression in any maximal cone (fan not complete or not projective)")]
    KahlerNoCone { collection: Vec<usize> },

    #[error("internal: {0}")]
    Internal(String),

    #[error("cycle: {0}")]
    Cycle(String),

    #[error("sampling: {0}")]
    Sampling(String),

    #[error("domain check failed: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vectors must all have the same length (expected {expected}, found {found})")]
    Ragged { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("generators do not span: rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,
}
