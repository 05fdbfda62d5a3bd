use thiserror::Error;

/// Errors raised across the toolkit. Every variant that concerns a concrete
/// graph element carries the offending identifier.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("`{item}` references unknown vertex `{vertex}`")]
    UnknownVertex { item: String, vertex: String },
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("graph is disconnected: `{0}` is unreachable from the first vertex")]
    Disconnected(String),
    #[error("terminal set needs at least 2 vertices, got {0}")]
    TooFewTerminals(usize),
    #[error("duplicate terminal `{0}`")]
    DuplicateTerminal(String),
    #[error("document has no terminal set")]
    MissingTerminals,
    #[error("expected an {expected} graph document")]
    WrongGraphKind { expected: &'static str },
    #[error("edge set is not a tree: {0}")]
    NotATree(String),
    #[error("vertex `{0}` is not in the tree")]
    VertexNotInTree(String),
    #[error("tree {tree} is not an R-Steiner tree: {reason}")]
    NotSteiner { tree: usize, reason: String },
    #[error("family is empty")]
    EmptyFamily,
    #[error("cannot smooth `{vertex}`: {reason}")]
    NotSmoothable { vertex: String, reason: String },
    #[error("arborescence {index} is invalid: {reason}")]
    NotArborescence { index: usize, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("certificate subset {subset} is invalid: {reason}")]
    Certificate { subset: usize, reason: String },
    #[error("size guard exceeded: {0} (pass force to override)")]
    GuardExceeded(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
    #[error("trace does not cover `{0}`")]
    TraceMismatch(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
