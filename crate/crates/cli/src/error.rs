use naw_core::delaunay::DelaunayError;
use naw_core::io::IoError;
use naw_core::HullError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Input that does not parse, or files that do not fit together.
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Read(#[from] IoError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Delaunay(#[from] DelaunayError),
    #[error("audit found {0} violation(s)")]
    Violations(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for usage and parse problems, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            _ => 1,
        }
    }
}
