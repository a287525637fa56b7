use toriquot_core::Error as CoreError;

/// Failures surfaced by the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0} exceeds the enumeration guard; pass --allow-large to proceed")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// 2 for precondition and usage failures, 3 for parse failures, 4 for
    /// internal-consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::Parse(_)) | CliError::Json { .. } => 3,
            CliError::Core(CoreError::Overflow(_) | CoreError::Internal(_)) => 4,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                CoreError::Argument(_) => "argument",
                CoreError::Precondition(_) => "precondition",
                CoreError::Parse(_) => "parse",
                CoreError::UnsupportedCoefficient(_) => "unsupported-coefficient",
                CoreError::Overflow(_) => "overflow",
                CoreError::Reconstruction(_) => "reconstruction",
                CoreError::Internal(_) => "internal",
            },
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Guard(_) => "guard",
        }
    }
}
