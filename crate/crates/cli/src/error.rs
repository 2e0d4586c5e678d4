use std::io;
use std::path::PathBuf;

use daestruct::dae::DaeError;
use daestruct::error::AnalysisError;
use daestruct::sigfile::SigFileError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Dae { path: PathBuf, source: DaeError },
    #[error("{path}: {source}")]
    Sig { path: PathBuf, source: SigFileError },
    #[error("{0}")]
    Usage(String),
    #[error("structurally ill-posed: no finite transversal")]
    IllPosed,
    #[error("not a general offset vector")]
    NotGeneral,
    #[error("{0}")]
    Rejected(String),
    #[error(transparent)]
    Analysis(AnalysisError),
}

impl CliError {
    /// 1 for I/O, parse and usage errors; 2 when the input is read but rejected.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Dae { .. } | Self::Sig { .. } | Self::Usage(_) => 1,
            Self::IllPosed | Self::NotGeneral | Self::Rejected(_) | Self::Analysis(_) => 2,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::StructurallyIllPosed | AnalysisError::StructurallySingular => Self::IllPosed,
            other => Self::Analysis(other),
        }
    }
}
