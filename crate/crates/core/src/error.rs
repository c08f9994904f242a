use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge index {index} out of range for a graph with {len} edges")]
    EdgeIndex { index: usize, len: usize },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexIndex { vertex: usize, n: usize },

    #[error("graph is not connected")]
    Disconnected,

    /// The input is valid but the exhaustive computation would be too large.
    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("({n}, {m}) is outside {set}")]
    OutOfClass {
        n: usize,
        m: usize,
        set: &'static str,
    },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("signatures belong to different classes: ({0}, {1}) vs ({2}, {3})")]
    MismatchedClass(usize, usize, usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard(_))
    }
}
