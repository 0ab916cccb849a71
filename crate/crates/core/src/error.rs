use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("edge {{{u}, {v}}} has label {label} but a vertex group has order at least 3")]
    Compatibility { u: String, v: String, label: u32 },

    #[error("vertex `{vertex}`: {msg}")]
    InvalidGroup { vertex: String, msg: String },

    #[error("generators of vertex `{0}` do not generate its group")]
    NotGenerating(String),

    #[error("vertex `{0}` has an opaque group; element-level operations are unavailable")]
    OpaqueVertex(String),

    #[error("element {elem} is not a valid non-trivial element of vertex `{vertex}`")]
    InvalidElement { vertex: String, elem: i64 },

    #[error("resource bound exceeded: {what} (bound {bound})")]
    Resource { what: String, bound: usize },

    #[error("vertex `{0}` has an infinite group; full mode needs an exponent cap")]
    InfiniteClique(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("clique {clique:?} has no gate for vertex {vertex}")]
    NotCliqueGated { vertex: usize, clique: Vec<usize> },

    #[error("parallelism is not transitive: {a:?} ∥ {b:?} ∥ {c:?} but {a:?} ∦ {c:?}")]
    NonTransitive { a: Vec<usize>, b: Vec<usize>, c: Vec<usize> },

    #[error("clique metrics are incoherent between parallel cliques {0:?} and {1:?}")]
    Incoherent(Vec<usize>, Vec<usize>),

    #[error("invalid space with partitions: {0}")]
    InvalidPartitions(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("gate is not certified inside the explored ball; increase the radius")]
    GateUncertified,

    #[error("bounded orbit: the element has finite order")]
    BoundedOrbit,

    #[error("numerical certification failed: {0}")]
    PrecisionExhausted(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
