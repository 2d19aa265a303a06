use thiserror::Error;

use crate::interference::{ConfigError, InterferenceError};
use crate::kinematics::KinematicsError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported schema version {found} (expected {expected})")]
    Schema { found: u64, expected: u64 },
    #[error("invalid phase grid `{0}`: expected start:stop:steps")]
    Phis(String),
    #[error("unknown suite selector `{selector}`; valid selectors: {valid}")]
    UnknownSelector { selector: String, valid: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Interference(#[from] InterferenceError),
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Json(e.to_string())
    }
}
