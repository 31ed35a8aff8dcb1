use thiserror::Error;

/// Errors raised by graph construction, parsing and the matching-theory checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has {0} vertices, at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} is not present")]
    EdgeAbsent(usize, usize),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("invalid shore: {0}")]
    InvalidShore(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("not matchable: graph has no perfect matching")]
    NotMatchable,
    #[error("cut is not tight")]
    NotTight,
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("scale: {0}")]
    Scale(String),
    #[error("invalid trisum: {0}")]
    InvalidTrisum(String),
    #[error("invalid splice: {0}")]
    InvalidSplice(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
