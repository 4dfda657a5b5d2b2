use thiserror::Error;

/// Errors raised by the library. Each variant has a stable short code used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("netflow has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("netflow lies on the boundary of the cone of roots; the dimension formula does not apply")]
    BoundaryNetflow,
    #[error("graph is not connected")]
    Disconnected,
    #[error("gamma function pole at {0}/2")]
    Pole(i64),
    #[error("series factor is not invertible at the origin (nonzero constant term)")]
    NotInvertible,
    #[error("variable count mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("loops are not supported here: {0}")]
    UnsupportedLoop(String),
    #[error("edges {0} and {1} do not match any reduction rule")]
    NotReducible(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("invalid flow: {0}")]
    InvalidFlow(String),
    #[error("{what} is {got}, above the limit {limit}")]
    TooLarge { what: String, got: usize, limit: usize },
    #[error("wrong theorem for this graph: {0}")]
    WrongTheorem(String),
    #[error("degenerate graph: {0}")]
    Degenerate(String),
    #[error("Ehrhart fit failed: {0}")]
    Fit(String),
    #[error("unsupported kernel: {0}")]
    UnsupportedKernel(String),
    #[error("methods disagree: {0}")]
    Disagreement(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidEdge(_) => "invalid-edge",
            Error::Parse { .. } => "parse",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::BoundaryNetflow => "boundary-netflow",
            Error::Disconnected => "disconnected",
            Error::Pole(_) => "pole",
            Error::NotInvertible => "not-invertible",
            Error::Arity(..) => "arity",
            Error::UnsupportedLoop(_) => "unsupported-loop",
            Error::NotReducible(..) => "not-reducible",
            Error::Precondition(_) => "precondition",
            Error::InvalidCycle(_) => "invalid-cycle",
            Error::InvalidFlow(_) => "invalid-flow",
            Error::TooLarge { .. } => "too-large",
            Error::WrongTheorem(_) => "wrong-theorem",
            Error::Degenerate(_) => "degenerate-graph",
            Error::Fit(_) => "fit",
            Error::UnsupportedKernel(_) => "unsupported-kernel",
            Error::Disagreement(_) => "disagreement",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
