use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid descriptor: {field}: {message}")]
    InvalidDescriptor { field: String, message: String },

    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("point set is empty")]
    EmptySet,

    #[error("unsupported dimension {0}: supply Vitushkin coefficients explicitly")]
    UnsupportedDimension(usize),

    #[error("invalid measure {0}: expected a value in (0, 2]")]
    InvalidMeasure(f64),

    #[error("invalid measure ratio {0}: expected a value in (0, 1]")]
    InvalidRatio(f64),

    #[error("q is infinite: omega must be positive, got {0}")]
    InfiniteQ(f64),

    #[error("missing derivative bound M_{0}")]
    MissingDerivativeBound(usize),

    #[error("degree {degree} too large: {reason}")]
    DegreeTooLarge { degree: usize, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("LP numerical failure: {message} (basis {basis:?})")]
    LpFailure { message: String, basis: Vec<usize> },

    #[error("invalid input `{field}`: {message}")]
    InvalidInput { field: String, message: String },
}

impl Error {
    pub(crate) fn descriptor(field: &str, message: impl Into<String>) -> Self {
        Error::InvalidDescriptor {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn input(field: &str, message: impl Into<String>) -> Self {
        Error::InvalidInput {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Name of the offending field, when the error is attributable to one.
    pub fn field(&self) -> Option<&str> {
        match self {
            Error::InvalidDescriptor { field, .. }
            | Error::Parse { field, .. }
            | Error::InvalidInput { field, .. } => Some(field),
            _ => None,
        }
    }
}
