use thiserror::Error;

/// Reasons an edge-list document is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line \"p <n> <m>\"")]
    MissingHeader,
    #[error("malformed header: {0:?}")]
    MalformedHeader(String),
    #[error("malformed edge line: {0:?}")]
    MalformedEdge(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("header announces {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("invalid graph: {0}")]
    InvalidGraph(ParseErrorKind),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertices {0} and {1} are adjacent")]
    AdjacentPair(usize, usize),
    #[error("vertex pair must consist of two distinct vertices, got {0} twice")]
    DegeneratePair(usize),
    #[error("{{{0}, {1}}} is not a separating pair")]
    NotSeparating(usize, usize),
    #[error("overlap of the summands is not a complete graph")]
    OverlapNotComplete,
    #[error("edge {0} {1} is not common to both summands")]
    EdgeNotShared(usize, usize),
    #[error("invalid vertex correspondence: {0}")]
    InvalidCorrespondence(String),
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters for family {family}: {reason}")]
    InvalidParameter { family: String, reason: String },
    #[error("edge set is not a basis of the matroid")]
    NotABasis,
    #[error("vector violates the equilibrium conditions of the framework")]
    NotAStress,
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("circuit enumeration is capped at size {max}, requested {requested}")]
    CircuitSizeTooLarge { requested: usize, max: usize },
    #[error("randomized computation inconsistent after retries: {0}")]
    Inconsistent(String),
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid parameter for suite {suite}: {reason}")]
    InvalidSuiteParameter { suite: String, reason: String },
    #[error("{operation} is only available for d in {{1, 2}}, got {d}")]
    UnsupportedDimension { operation: &'static str, d: usize },
    #[error("{0}")]
    Usage(String),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
