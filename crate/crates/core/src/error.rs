use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("generator set is not irreducible")]
    NotIrreducible,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("starlet parameter {0} is repeated")]
    DuplicateParameter(u32),
    #[error("starlet parameters must be positive and at least one is required")]
    InvalidParameter,
    #[error("rank {0} is too large for this procedure")]
    RankTooLarge(usize),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
