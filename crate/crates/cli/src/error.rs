use idsim_core::extract::{JsonlError, ScanError};
use idsim_core::lexicon::DictionaryError;
use idsim_core::pairing::RegistryError;
use idsim_core::report::ReportError;
use thiserror::Error;

/// A failure mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad invocation: exit 1.
    #[error("{0:#}")]
    Usage(anyhow::Error),
    /// Malformed input or configuration, or a data-level check failed: exit 2.
    #[error("{0:#}")]
    Data(anyhow::Error),
    /// Reading or writing files failed: exit 3.
    #[error("{0:#}")]
    Io(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn usage(msg: impl std::fmt::Display) -> Self {
        CliError::Usage(anyhow::anyhow!("{msg}"))
    }

    pub fn data(msg: impl std::fmt::Display) -> Self {
        CliError::Data(anyhow::anyhow!("{msg}"))
    }

    pub fn io(err: impl Into<anyhow::Error>, what: impl std::fmt::Display) -> Self {
        CliError::Io(err.into().context(what.to_string()))
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::RootMissing(_) | ScanError::InvalidGlob { .. } => CliError::Usage(e.into()),
            ScanError::FailureThreshold { .. } => CliError::Data(e.into()),
            ScanError::Io { .. } => CliError::Io(e.into()),
        }
    }
}

impl From<DictionaryError> for CliError {
    fn from(e: DictionaryError) -> Self {
        match e {
            DictionaryError::Io { .. } => CliError::Io(e.into()),
            _ => CliError::Data(e.into()),
        }
    }
}

impl From<RegistryError> for CliError {
    fn from(e: RegistryError) -> Self {
        match e {
            RegistryError::Io { .. } => CliError::Io(e.into()),
            _ => CliError::Data(e.into()),
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::DanglingReference { .. }
            | ReportError::UnsupportedConfidence(_)
            | ReportError::InvalidMargin(_) => CliError::Data(e.into()),
            ReportError::Io { .. } | ReportError::Csv(_) | ReportError::Json(_) => CliError::Io(e.into()),
        }
    }
}

/// Attributes a JSON Lines failure to the file it came from.
pub fn jsonl_error(e: JsonlError, path: &str) -> CliError {
    match e {
        JsonlError::Io(io) => CliError::io(io, format!("reading {path}")),
        other => CliError::Data(anyhow::Error::new(other).context(format!("malformed {path}"))),
    }
}
