use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("mixed cyclotomic fields: order {0} and order {1}")]
    MixedFields(u32, u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("section plane is not generic: {0}")]
    Genericity(String),
    #[error("invalid local system: {0}")]
    InvalidLocalSystem(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("extension is disconnected from the support: {0}")]
    DisconnectedExtension(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
