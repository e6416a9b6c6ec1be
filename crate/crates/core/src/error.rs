use thiserror::Error;

/// Errors raised by the library.
///
/// Conditions that are legitimate *answers* (a sequence that is not graphic,
/// a b-matching instance with no perfect matching) are reported through
/// return values, not through this type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("negative degree {value} at position {index}")]
    NegativeDegree { index: usize, value: i64 },

    #[error("alpha must be non-zero")]
    ZeroAlpha,

    #[error("integer overflow while accumulating {0}")]
    Overflow(&'static str),

    #[error("invalid two-switch: {0}")]
    InvalidSwitch(String),

    #[error("degree sequence is not graphic")]
    NotGraphic,

    #[error("malformed matching instance: {0}")]
    MalformedInstance(String),

    #[error("reduction needs {needed} gadget nodes, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("invalid weight matrix: {0}")]
    InvalidMatrix(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
