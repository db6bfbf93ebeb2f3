use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("edge {0}-{1} is not in the graph")]
    UnknownEdge(usize, usize),

    #[error("labeling has {labels} labels but graph has {vertices} vertices")]
    LabelCountMismatch { labels: usize, vertices: usize },

    #[error("set label must be nonempty")]
    EmptyLabel,

    #[error("vertices {0} and {1} are adjacent; non-singleton set must be independent")]
    NotIndependent(usize, usize),

    #[error("graph is not a cycle")]
    NotACycle,

    #[error("labeling is not a weak IASI: {0}")]
    NotWeak(String),

    #[error("instance has {vertices} vertices; {engine} engine limit is {limit}")]
    InstanceTooLarge {
        vertices: usize,
        limit: usize,
        engine: &'static str,
    },

    #[error("search exceeded node budget of {budget}")]
    NodeBudgetExceeded { budget: u64 },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by search limits rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::InstanceTooLarge { .. } | Error::NodeBudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
