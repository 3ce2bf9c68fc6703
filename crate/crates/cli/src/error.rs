use std::path::{Path, PathBuf};

use serde_json::json;
use vibe_core::ingest::IngestError;
use vibe_core::jsonl::RecordError;
use vibe_core::masking::MaskingError;
use vibe_core::provider::ProviderError;
use vibe_core::scoring::ScoringError;
use vibe_core::selection::SelectionError;
use vibe_core::stats::StatsError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("stage dependency missing: {path} (run `vibe {stage}` first)")]
    MissingDependency { path: PathBuf, stage: &'static str },
    #[error("missing credentials: set {0}")]
    Credentials(&'static str),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error(transparent)]
    Masking(#[from] MaskingError),
    #[error(transparent)]
    Provider(#[from] ProviderError),
    #[error(transparent)]
    Scoring(#[from] ScoringError),
    #[error(transparent)]
    Selection(#[from] SelectionError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Self::Io { path: path.to_path_buf(), message: e.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::MissingDependency { .. } => 2,
            CliError::Credentials(_) => 3,
            // a credential problem reported by the transport layer
            CliError::Provider(ProviderError::MissingCredentials(_)) => 3,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::MissingDependency { .. } => "stage_dependency_missing",
            CliError::Credentials(_) => "missing_credentials",
            CliError::Config(_) => "config",
            CliError::Io { .. } => "io",
            CliError::Ingest(_) => "ingest",
            CliError::Record(_) => "record",
            CliError::Masking(_) => "masking",
            CliError::Provider(_) => "provider",
            CliError::Scoring(_) => "scoring",
            CliError::Selection(_) => "selection",
            CliError::Stats(_) => "stats",
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        json!({ "error": self.kind(), "exit_code": self.exit_code(), "message": self.to_string() }).to_string()
    }
}
