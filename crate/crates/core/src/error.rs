use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node {node} out of range for order {order}")]
    NodeOutOfRange { node: usize, order: usize },
    #[error("loop at node {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph order must be between 1 and {max}, got {got}")]
    InvalidOrder { got: usize, max: usize },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("{what} is limited to {cap}, got {got}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
    },
    #[error("labeling has {got} values for a graph of order {order}")]
    LabelingSize { got: usize, order: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction infeasible: {0}")]
    Infeasible(String),
    #[error("search budget exceeded before a result was established")]
    BudgetExceeded,
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
