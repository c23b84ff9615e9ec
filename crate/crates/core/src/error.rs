use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FcaError {
    #[error("dimension mismatch: expected width {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("duplicate {kind} name `{name}`")]
    NameCollision { kind: &'static str, name: String },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid generalization scheme: {0}")]
    Scheme(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("concepts belong to different contexts")]
    ContextMismatch,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = FcaError> = std::result::Result<T, E>;
