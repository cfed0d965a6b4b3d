use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Domain(String),
    #[error("infinite-dimensional: arrow ideal not nilpotent below path length {0}")]
    InfiniteDimensional(usize),
    #[error("indecomposability undecided: {0}")]
    Undecided(String),
    #[error("AR class ambiguous: {0}")]
    ArAmbiguous(String),
    #[error("not representation-finite within budget of {0} objects")]
    Budget(usize),
    #[error("not representation-finite within budget: an indecomposable exceeded dimension {0}")]
    SizeBudget(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for malformed input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Json(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
