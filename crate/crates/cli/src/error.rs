use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    /// Placement finished with flagged connections.
    pub const PARTIAL: u8 = 1;
    pub const PARAMETER: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const CAPACITY: u8 = 4;
    pub const VALIDATION: u8 = 5;
    pub const IO: u8 = 6;
    pub const STRUCTURAL: u8 = 7;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] swplace::Error),
    #[error("{}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("placement violates {0} hardware constraint(s)")]
    Invalid(usize),
    #[error("{0} connection(s) flagged")]
    Partial(usize),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        use swplace::Error as E;
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Config { .. } => exit::PARSE,
            CliError::Invalid(_) => exit::VALIDATION,
            CliError::Partial(_) => exit::PARTIAL,
            CliError::Usage(_) => exit::PARAMETER,
            CliError::Core(e) => match e {
                E::Parameter(_) => exit::PARAMETER,
                E::Parse(_) => exit::PARSE,
                E::Capacity { .. } => exit::CAPACITY,
                E::Structural(_) | E::UnknownNeuron(_) => exit::STRUCTURAL,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
