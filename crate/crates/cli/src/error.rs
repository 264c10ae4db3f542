use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input `{field}`: {message}")]
    Input { field: String, message: String },

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("verification failed: criterion {}", join(failed))]
    Verification { failed: Vec<u32>, report: String },
}

fn join(ids: &[u32]) -> String {
    ids.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

impl CliError {
    pub fn input(field: &str, message: impl Into<String>) -> Self {
        CliError::Input {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// 1 for bad input, 2 for numerical failures, 3 for failed criteria.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 1,
            CliError::Numeric(_) => 2,
            CliError::Verification { .. } => 3,
        }
    }
}

impl From<remezkit::Error> for CliError {
    fn from(e: remezkit::Error) -> Self {
        match e {
            remezkit::Error::LpFailure { .. } => CliError::Numeric(e.to_string()),
            ref other => {
                let field = other.field().unwrap_or(match other {
                    remezkit::Error::MissingDerivativeBound(_) => "M",
                    remezkit::Error::DegreeTooLarge { .. } => "d",
                    remezkit::Error::InfiniteQ(_) => "set",
                    _ => "set",
                });
                CliError::input(field, other.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
