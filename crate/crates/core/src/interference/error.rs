use std::fmt;

use thiserror::Error;

use crate::amplitudes::AmplitudeError;
use crate::kinematics::KinematicsError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldIssue {
    pub field: &'static str,
    pub message: String,
}

/// Every invalid field of an [`super::ExperimentConfig`], not just the first.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ConfigError {
    pub issues: Vec<FieldIssue>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid experiment config:")?;
        for issue in &self.issues {
            write!(f, " {}: {};", issue.field, issue.message)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterferenceError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Amplitude(#[from] AmplitudeError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("phase list must contain at least {min} values, got {got}")]
    TooFewPhases { min: usize, got: usize },
    #[error("phase {0} is not finite")]
    NonFinitePhase(f64),
    #[error("weight grid resolution must be at least 2, got {0}")]
    BadResolution(usize),
}
