use thiserror::Error;

/// Errors produced anywhere in the engine.
///
/// Each variant maps to one CLI exit status through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("unknown group or chain `{0}`")]
    UnknownName(String),

    #[error("size bound exceeded: {what} has {size} elements, bound is {bound}; supply the table as JSON or raise --max-order / CHARCOL_MAX_ORDER")]
    SizeBound { what: String, size: u128, bound: u64 },

    #[error("level mismatch: expected level {expected}, got {got}")]
    LevelMismatch { expected: usize, got: usize },

    #[error("unsupported for this chain: {0}")]
    UnsupportedChain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a surjective chain: restriction at level {level} has rank {rank} < {expected}")]
    NotSurjective { level: usize, rank: usize, expected: usize },

    #[error("inconsistent chain data: {0}")]
    InconsistentChain(String),

    #[error("label `{0}` not found")]
    MissingLabel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// 2 for usage-type problems, 3 for resource bounds, 1 for everything
    /// that means the data or a check failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::UnknownName(_)
            | Error::MissingLabel(_)
            | Error::Precondition(_)
            | Error::LevelMismatch { .. }
            | Error::UnsupportedChain(_) => 2,
            Error::SizeBound { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
