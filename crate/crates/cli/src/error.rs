use thiserror::Error;

/// Failure of a CLI invocation, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("computation failed: {0}")]
    Numerical(String),
    #[error("{failed} of {total} verification reports failed")]
    VerificationFailed { failed: usize, total: usize },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::VerificationFailed { .. } | Self::Numerical(_) => 1,
            Self::Usage(_) | Self::Parse(_) | Self::Io { .. } => 2,
            Self::Precondition(_) => 3,
        }
    }
}

impl From<amalgam_core::Error> for CliError {
    fn from(err: amalgam_core::Error) -> Self {
        use amalgam_core::Error as E;
        match err {
            E::JumpModel => Self::Precondition(
                "the model must be continuous on the half-line: f(t0) = 0 unless t0 = 0, and f(tK) = 0"
                    .into(),
            ),
            E::Singular(t) => {
                Self::Precondition(format!("principal value diverges at t = {t}: the model jumps there"))
            }
            E::ZeroFunction => Self::Precondition("the function is identically zero".into()),
            E::Quadrature { .. } | E::NoConvergence(_) => Self::Numerical(err.to_string()),
            other => Self::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
