use thiserror::Error;

use crate::constructive::SolveCertificate;

/// Errors raised by the library. Vertex fields are 0-based ids; messages
/// print the 1-based labels used in instance files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex v{} out of range for a graph on {n} vertices", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{0} vertices requested; at most 64 are supported")]
    TooManyVertices(usize),

    #[error("duplicate edge v{}v{}", .0 + 1, .1 + 1)]
    DuplicateEdge(usize, usize),

    #[error("edge v{}v{} joins a vertex to itself; use a loop instead", .0 + 1, .0 + 1)]
    SelfPair(usize),

    #[error("configuration has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("move {index} at v{} is invalid: the vertex is off", .vertex + 1)]
    InvalidMove { index: usize, vertex: usize },

    #[error("{what} is {value}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("target configuration is not reachable by regular moves")]
    Unreachable,

    #[error("underlying loopless graph is not a tree")]
    NotATree,

    #[error("graph is not connected")]
    Disconnected,

    #[error("certificate bound violated: final light {} exceeds {} + {}", .0.final_light(), .0.ml, .0.bound)]
    BoundViolation(Box<SolveCertificate>),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
