use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("adjacency is not symmetric: {0}")]
    Asymmetric(String),

    #[error("vertex id {id} out of range 1..={n} (line {line})")]
    VertexOutOfRange { id: u64, n: usize, line: usize },

    #[error("self-loop on vertex {vertex} (line {line})")]
    SelfLoop { vertex: usize, line: usize },

    #[error("header declares {declared} edges but adjacency lists contain {found}")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("edges do not form a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("edge {0} is not a tree edge")]
    NotTreeEdge(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("partition is not balanced: max block weight {max_block} exceeds bound {bound}")]
    Unbalanced { max_block: u64, bound: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}
