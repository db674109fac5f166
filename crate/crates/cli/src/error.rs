use eja::EjaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Unsupported(String),
    /// A checked invariant failed; the report has been written.
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Invalid(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Unsupported(_) => 4,
            CliError::Invariant(_) | CliError::Invalid(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<EjaError> for CliError {
    fn from(e: EjaError) -> Self {
        let msg = e.to_string();
        match e {
            EjaError::Parse { .. } | EjaError::Length { .. } | EjaError::Construction(_) => CliError::Parse(msg),
            EjaError::Budget { .. } => CliError::Budget(msg),
            EjaError::Unsupported(_) | EjaError::AxiomGate(_) => CliError::Unsupported(msg),
            _ => CliError::Invalid(msg),
        }
    }
}
