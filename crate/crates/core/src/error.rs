use thiserror::Error;

/// Everything that can go wrong between reading a graph file and emitting equations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,

    #[error("not a QHS tree: {0}")]
    NotQhsTree(String),

    #[error("blow-down leaves vertex `{0}` with non-negative weight; no minimal representative")]
    NonMinimalRepresentable(String),

    #[error("splice diagram has no nodes: cyclic quotient case")]
    NoNodes,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("semigroup condition fails at node `{node}` in the direction of `{toward}`")]
    SemigroupFailed { node: String, toward: String },

    #[error("congruence condition fails at node `{node}`")]
    CongruenceFailed { node: String },

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderTooLarge { order: String, cap: u64 },

    #[error("number too large for enumeration: {0}")]
    Overflow(String),

    #[error("polynomials live over different variable sets")]
    IncompatibleVariables,

    #[error("polynomial is not weighted homogeneous")]
    Inhomogeneous,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Malformed input, as opposed to a well-formed input the operation does not apply to.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidGraph(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
