use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("point sets are not separated by a line")]
    NotSeparated,

    #[error("layout contract violated: {0}")]
    Layout(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("points {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),

    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("search budget exhausted after {0} nodes")]
    BudgetExhausted(u64),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
