use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("domain error at byte {offset}: {message}")]
    Domain { offset: usize, message: String },

    #[error("malformed vertex at byte {offset}: {message}")]
    VertexSyntax { offset: usize, message: String },

    #[error("{vertex} is not a vertex of {graph}")]
    InvalidVertex { vertex: String, graph: String },

    #[error("breadth-first search exceeded {limit} vertices")]
    BallTooLarge { limit: usize },

    #[error("group enumeration exceeded the cap of {cap} elements")]
    EnumerationCap { cap: usize },

    #[error("the group is not transitive")]
    NotTransitive,

    #[error("the group has no non-identity element")]
    TrivialGroup,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("invalid coloring: {0}")]
    Coloring(String),

    #[error("the trace is not complete")]
    IncompleteTrace,

    #[error("graph input: {0}")]
    GraphInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
