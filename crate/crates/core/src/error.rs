use alloc::string::String;

/// Errors shared by every module of the crate.
///
/// The variants are grouped the way the command-line front end reports them:
/// argument and precondition failures, parse failures, unsupported coefficient
/// combinations, and internal consistency failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported coefficient: {0}")]
    UnsupportedCoefficient(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
