use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Precondition violations on public entry points are reported through this
/// type rather than by panicking; panics are reserved for internal
/// inconsistencies that no input should be able to trigger.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),

    #[error("edge size h must be at least 1")]
    EdgeSizeZero,

    #[error("vertex count {0} exceeds the supported maximum of 64")]
    TooManyVertices(usize),

    #[error("{what} must be at least {min}, got {got}")]
    ValueTooSmall {
        what: &'static str,
        min: u64,
        got: u64,
    },

    #[error("{what} must be a power of two, got {got}")]
    NotPowerOfTwo { what: &'static str, got: u64 },

    #[error("subset must be strictly increasing, got {0:?}")]
    MalformedSubset(Vec<usize>),

    #[error("rank {rank} out of range for the {k}-subsets of a {v}-set")]
    RankOutOfRange { rank: u64, k: usize, v: usize },

    #[error("vertex {vertex} out of range for vertex count {v}")]
    VertexOutOfRange { vertex: usize, v: usize },

    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix dimensions do not admit this operation: {0}")]
    BadDimensions(String),

    #[error("need 0 <= t <= k <= v, got v={v}, t={t}, k={k}")]
    BadIncidenceParams { v: usize, t: usize, k: usize },

    #[error("rank formula requires t <= min(k, v-k), got v={v}, t={t}, k={k}")]
    WilsonHypothesis { v: usize, t: usize, k: usize },

    #[error("disjointness matrix requires 2t <= v, got v={v}, t={t}")]
    KneserHypothesis { v: usize, t: usize },

    #[error("hypergraph shapes differ: (v={v1}, h={h1}) vs (v={v2}, h={h2})")]
    ShapeMismatch {
        v1: usize,
        h1: usize,
        v2: usize,
        h2: usize,
    },

    #[error("edge {edge:?} has {} vertices, expected {expected}", edge.len())]
    WrongEdgeSize { edge: Vec<usize>, expected: usize },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("blocks do not partition the vertex set: {0}")]
    BadPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
