use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge list is empty")]
    EmptyInput,
    #[error("explicit self-loop on vertex `{0}` (identity self-loops are implicit)")]
    SelfLoopInput(String),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(VertexId),
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),
    #[error("cannot concatenate: first path ends at {end}, second starts at {start}")]
    EndpointMismatch { end: VertexId, start: VertexId },
    #[error("vertex sequence is not a path of the graph: {0}")]
    InvalidPath(String),
    #[error("path pair endpoints disagree: {0}")]
    InvalidPathPair(String),
    #[error("budget of {limit} {what} exceeded")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("graph contains a directed cycle")]
    CycleDetected,
    #[error("graph is not strongly connected: vertex {0} is unreachable from the root")]
    NotStronglyConnected(VertexId),
    #[error("edge ({0}, {1}) does not cross between the requested components")]
    NotCrossEdges(VertexId, VertexId),
    #[error("no matrix stored for edge ({0}, {1})")]
    MissingEdgeMatrix(VertexId, VertexId),
    #[error("matrix for edge {edge} has shape {rows}x{cols}, expected {dim}x{dim}")]
    DimensionMismatch {
        edge: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("objective became non-finite at epoch {0}")]
    Divergence(usize),
    #[error("could not sample a weakly connected graph after {0} attempts")]
    GraphSamplingFailed(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable name used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::SelfLoopInput(_) => "SelfLoopInput",
            Error::VertexOutOfRange(_) => "VertexOutOfRange",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::EndpointMismatch { .. } => "EndpointMismatch",
            Error::InvalidPath(_) => "InvalidPath",
            Error::InvalidPathPair(_) => "InvalidPathPair",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::CycleDetected => "CycleDetected",
            Error::NotStronglyConnected(_) => "NotStronglyConnected",
            Error::NotCrossEdges(..) => "NotCrossEdges",
            Error::MissingEdgeMatrix(..) => "MissingEdgeMatrix",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Divergence(_) => "Divergence",
            Error::GraphSamplingFailed(_) => "GraphSamplingFailed",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
            Error::Json(_) => "JsonError",
            Error::Io(_) => "IoError",
        }
    }
}
