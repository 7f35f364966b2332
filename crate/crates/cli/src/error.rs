use loewner_core::Error as CoreError;
use thiserror::Error;

/// Command failure, carrying the process exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("property failure: {0}")]
    Property(String),
    #[error("{0}")]
    Math(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Dimension(_) => 3,
            CliError::NotAutomorphism(_) => 4,
            CliError::Property(_) => 5,
        }
    }

    /// Reclassifies a core error raised while building or recovering an
    /// automorphism.
    pub fn automorphism(e: CoreError) -> CliError {
        match CliError::from(e) {
            CliError::Math(inner) => CliError::NotAutomorphism(inner.to_string()),
            other => other,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::DimensionMismatch { .. } | CoreError::NotSquare { .. } => {
                CliError::Dimension(e.to_string())
            }
            CoreError::NonFinite | CoreError::BadShape { .. } | CoreError::InvalidSpec(_) => CliError::Parse(e.to_string()),
            CoreError::NotAutomorphism(msg) => CliError::NotAutomorphism(msg),
            other => CliError::Math(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
