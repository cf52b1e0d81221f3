use nahmlab_core::nahm::HalflineError;
use nahmlab_core::Error;

/// Process outcome; the discriminant is the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    CheckFailure = 1,
    ConfigError = 2,
    BlowUp = 3,
    NonConvergence = 4,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// `Pass` when `ok`, otherwise `CheckFailure`.
    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::CheckFailure
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("blow-up: {0}")]
    BlowUp(String),
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    #[error("{0}")]
    Numerics(Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            CliError::Config(_) => Outcome::ConfigError,
            CliError::Io { .. } => Outcome::ConfigError,
            CliError::BlowUp(_) => Outcome::BlowUp,
            CliError::NonConvergence(_) => Outcome::NonConvergence,
            CliError::Numerics(_) => Outcome::CheckFailure,
        }
    }
}

impl From<Error> for CliError {
    /// Malformed inputs are configuration errors; blow-ups keep their own
    /// code; anything else is a failed computation.
    fn from(e: Error) -> Self {
        match e {
            Error::BlowUp { .. } => CliError::BlowUp(e.to_string()),
            Error::DimensionMismatch { .. }
            | Error::LengthMismatch { .. }
            | Error::GridMismatch
            | Error::InvalidArgument(_)
            | Error::NotInAlgebra { .. }
            | Error::NotRotation { .. }
            | Error::BoundaryViolation { .. } => CliError::Config(e.to_string()),
            other => CliError::Numerics(other),
        }
    }
}

impl From<HalflineError> for CliError {
    fn from(e: HalflineError) -> Self {
        match e {
            HalflineError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            HalflineError::BlowUp { .. } => CliError::BlowUp(e.to_string()),
            HalflineError::Invalid(inner) => inner.into(),
        }
    }
}
