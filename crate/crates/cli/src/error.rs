use std::path::PathBuf;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {what}: {message}")]
    Parse { what: String, message: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] gwdk_core::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Read { .. } => "read",
            Self::Write { .. } => "write",
            Self::Parse { .. } => "parse",
            Self::UnknownPreset(_) => "unknown_preset",
            Self::Config(_) => "config",
            Self::Model(_) => "model",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Read { .. } | Self::Write { .. } => 3,
            Self::Model(_) => 4,
            _ => 2,
        }
    }

    /// One-line machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
