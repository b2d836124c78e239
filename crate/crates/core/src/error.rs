use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial({n}, {k}) with negative upper index is not supported")]
    NegativeBinomial { n: i64, k: i64 },

    #[error("odd double factorial is undefined for {0} (need odd m >= -3)")]
    DoubleFactorial(i64),

    #[error("duplicate interpolation node x = {0}")]
    DuplicateNode(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{0:?} is not a vertex of the polytope")]
    NotAVertex(Vec<i64>),

    #[error("({a}, {b}) are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("{what} = {value} exceeds the size guard of {limit}")]
    SizeGuard {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("series precondition violated: {0}")]
    Series(String),

    #[error("invariant breach: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
