use thiserror::Error;

/// Failures of a run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// A parameter violates a precondition; nothing has been computed.
    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("computation failed: {0}")]
    Computation(#[from] lagfrac_core::Error),

    #[error("{0}")]
    Output(#[from] std::io::Error),

    /// Some verification suites failed.
    #[error("{failed} of {total} verification suites failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 3,
            CliError::Computation(_) | CliError::Output(_) | CliError::Verification { .. } => 4,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

/// Reports a core error raised while checking parameters as a validation
/// failure rather than a computation failure.
pub fn invalid(e: lagfrac_core::Error) -> CliError {
    let text = match e {
        lagfrac_core::Error::Domain(msg) => msg,
        other => other.to_string(),
    };
    CliError::Validation(text)
}
