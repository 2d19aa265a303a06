use serde::{Deserialize, Serialize};

use super::{ConfigError, FieldIssue};
use crate::tolerance::AMPLITUDE_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockedArm {
    #[default]
    None,
    Upper,
    Lower,
}

impl BlockedArm {
    pub const ALL: [BlockedArm; 3] = [BlockedArm::None, BlockedArm::Upper, BlockedArm::Lower];
}

/// Detector sitting in the upper arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectorModel {
    #[default]
    None,
    NonDemolishingRecording,
    NonDemolishingSilent,
    AbsorbAndReemitRecording,
}

impl DetectorModel {
    pub const ALL: [DetectorModel; 4] = [
        DetectorModel::None,
        DetectorModel::NonDemolishingRecording,
        DetectorModel::NonDemolishingSilent,
        DetectorModel::AbsorbAndReemitRecording,
    ];

    /// Whether a which-way record exists when the arms recombine.
    pub fn records_which_way(self) -> bool {
        matches!(
            self,
            DetectorModel::NonDemolishingRecording | DetectorModel::AbsorbAndReemitRecording
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            DetectorModel::None => "none",
            DetectorModel::NonDemolishingRecording => "non_demolishing_recording",
            DetectorModel::NonDemolishingSilent => "non_demolishing_silent",
            DetectorModel::AbsorbAndReemitRecording => "absorb_and_reemit_recording",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Composition {
    #[default]
    Amplitude,
    ClassicalMixture,
}

fn half() -> f64 {
    0.5
}

/// An interferometer description. Every field is frame-independent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Transmissivity of the first splitter.
    #[serde(default = "half")]
    pub splitter1: f64,
    #[serde(default = "half")]
    pub splitter2: f64,
    /// Phase (radians) applied to the upper arm.
    #[serde(default)]
    pub phase: f64,
    #[serde(default)]
    pub blocked_arm: BlockedArm,
    #[serde(default)]
    pub detector_model: DetectorModel,
    #[serde(default)]
    pub composition: Composition,
    /// `[upper, lower]` path weights, classical mode only. Defaults to the
    /// first splitter's `[T, 1 - T]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixture_weights: Option<[f64; 2]>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            splitter1: 0.5,
            splitter2: 0.5,
            phase: 0.0,
            blocked_arm: BlockedArm::None,
            detector_model: DetectorModel::None,
            composition: Composition::Amplitude,
            mixture_weights: None,
        }
    }
}

impl ExperimentConfig {
    pub fn classical(weights: [f64; 2]) -> Self {
        ExperimentConfig {
            composition: Composition::ClassicalMixture,
            mixture_weights: Some(weights),
            ..Default::default()
        }
    }

    pub fn with_phase(&self, phase: f64) -> Self {
        ExperimentConfig {
            phase,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut issues = Vec::new();
        for (field, value) in [("splitter1", self.splitter1), ("splitter2", self.splitter2)] {
            if !(0.0..=1.0).contains(&value) {
                issues.push(FieldIssue {
                    field,
                    message: format!("transmissivity must lie in [0, 1], got {value}"),
                });
            }
        }
        if !self.phase.is_finite() {
            issues.push(FieldIssue {
                field: "phase",
                message: format!("must be finite, got {}", self.phase),
            });
        }
        if let Some(w) = self.mixture_weights {
            if self.composition == Composition::Amplitude {
                issues.push(FieldIssue {
                    field: "mixture_weights",
                    message: "only meaningful with composition = classical_mixture".into(),
                });
            }
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                issues.push(FieldIssue {
                    field: "mixture_weights",
                    message: format!("weights must be finite and nonnegative, got {w:?}"),
                });
            } else if (w[0] + w[1] - 1.0).abs() > AMPLITUDE_TOL {
                issues.push(FieldIssue {
                    field: "mixture_weights",
                    message: format!("weights must sum to 1, got {}", w[0] + w[1]),
                });
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { issues })
        }
    }

    /// `[upper, lower]` weights used in classical mode.
    pub fn path_weights(&self) -> [f64; 2] {
        self.mixture_weights
            .unwrap_or([self.splitter1, 1.0 - self.splitter1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_balanced() {
        let c: ExperimentConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(c, ExperimentConfig::default());
        assert!(c.validate().is_ok());
        assert_eq!(c.path_weights(), [0.5, 0.5]);
    }

    #[test]
    fn all_offending_fields_reported() {
        let c = ExperimentConfig {
            splitter1: 1.5,
            splitter2: -0.1,
            phase: f64::NAN,
            mixture_weights: Some([0.7, 0.7]),
            ..Default::default()
        };
        let err = c.validate().unwrap_err();
        let fields: Vec<_> = err.issues.iter().map(|i| i.field).collect();
        assert_eq!(
            fields,
            vec![
                "splitter1",
                "splitter2",
                "phase",
                "mixture_weights",
                "mixture_weights"
            ]
        );
        assert!(err.to_string().contains("splitter1"));
    }

    #[test]
    fn unknown_fields_rejected() {
        let r: Result<ExperimentConfig, _> = serde_json::from_str(r#"{"splitter": 0.5}"#);
        assert!(r.is_err());
    }

    #[test]
    fn recording_models() {
        let recording: Vec<_> = DetectorModel::ALL
            .iter()
            .filter(|m| m.records_which_way())
            .map(|m| m.name())
            .collect();
        assert_eq!(
            recording,
            vec!["non_demolishing_recording", "absorb_and_reemit_recording"]
        );
    }
}
