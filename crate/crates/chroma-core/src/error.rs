use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) is out of range for a graph on {n} vertices")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },

    #[error("self-loop ({v}, {v}) is not allowed")]
    SelfLoop { v: usize },

    #[error("graphs larger than {max} vertices are not supported (requested {n})")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {v} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("({u}, {v}) is an edge; only nonadjacent pairs can be contracted")]
    AdjacentContraction { u: usize, v: usize },

    #[error("({u}, {v}) is already an edge")]
    AlreadyAnEdge { u: usize, v: usize },

    #[error("contract_edge requires an edge; ({u}, {v}) is a nonadjacent pair")]
    NotAdjacent { u: usize, v: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("{count} colorings exceed the enumeration guard of {guard}")]
    GuardExceeded { count: BigUint, guard: u64 },

    #[error("no proper {k}-colorings exist; the expectation is undefined")]
    NoColorings { k: usize },

    #[error("vertex {v} has degree {degree} < {needed}; cannot fix a restricted neighborhood")]
    DegreeTooSmall { v: usize, degree: usize, needed: usize },

    #[error("chromatic number is below {k}; the hypothesis of the radiant-vertex lemma fails")]
    ChiBelowK { k: usize },

    #[error("coloring is not a proper {k}-coloring: {reason}")]
    ImproperColoring { k: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
