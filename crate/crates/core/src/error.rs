use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EjaError {
    #[error("invalid algebra: {0}")]
    Construction(String),
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient vector has length {got}, algebra dimension is {expected}")]
    Length { expected: usize, got: usize },
    #[error("degenerate spectrum: {0} (try a larger tolerance)")]
    Degenerate(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("eigenvalue {eigenvalue} outside the function domain")]
    Domain { eigenvalue: f64 },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("budget exceeded: {what} needs {required} coefficients, budget is {budget}")]
    Budget {
        what: String,
        required: f64,
        budget: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("refused: {0}")]
    AxiomGate(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, EjaError>;
