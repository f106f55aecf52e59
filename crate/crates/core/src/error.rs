use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad user input: unknown Cartan type, index out of range, malformed word.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A vector is not a root of the system it was paired against.
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i32>),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("calibration failed: {0}")]
    Calibration(String),

    /// The computed quotient disagrees with the known presentation of `CH*(G; F_p)`.
    #[error("degree {degree}: computed quotient dimension {computed}, presentation predicts {expected}")]
    DimensionMismatch {
        degree: usize,
        computed: usize,
        expected: usize,
    },

    #[error("fixture {file}:{line}: {msg}")]
    Fixture {
        file: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
