use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("vertex {vertex} out of range for a complex on {m} vertices")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("search budget of {budget} nodes exhausted at target rank {rank}; certified bounds r in [{lower}, {upper}]")]
    BudgetExhausted {
        budget: u64,
        rank: usize,
        lower: usize,
        upper: usize,
    },

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
