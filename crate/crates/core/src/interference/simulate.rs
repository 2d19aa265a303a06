use serde::{Deserialize, Serialize};

use super::{BlockedArm, Composition, ExperimentConfig, InterferenceError};
use crate::amplitudes::{evaluate, phase, AlternativeGraph, Amplitude, Outcome, SquaredNorm};

/// Normalized statistics at the two output ports plus the loss channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub p_d0: f64,
    pub p_d1: f64,
    pub p_absorbed: f64,
    pub p_d0_given_detected: Option<f64>,
    pub p_d1_given_detected: Option<f64>,
}

impl OutcomeDistribution {
    pub fn new(p_d0: f64, p_d1: f64, p_absorbed: f64) -> Self {
        let detected = p_d0 + p_d1;
        let (c0, c1) = if detected > 0.0 {
            (Some(p_d0 / detected), Some(p_d1 / detected))
        } else {
            (None, None)
        };
        OutcomeDistribution {
            p_d0,
            p_d1,
            p_absorbed,
            p_d0_given_detected: c0,
            p_d1_given_detected: c1,
        }
    }

    /// All five fields as a flat array, conditionals as NaN when undefined.
    pub fn as_array(&self) -> [f64; 5] {
        [
            self.p_d0,
            self.p_d1,
            self.p_absorbed,
            self.p_d0_given_detected.unwrap_or(f64::NAN),
            self.p_d1_given_detected.unwrap_or(f64::NAN),
        ]
    }

    /// Bitwise equality, treating the undefined conditionals as equal.
    pub fn bit_identical(&self, other: &Self) -> bool {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub phi: f64,
    pub distribution: OutcomeDistribution,
}

fn transmission(t: f64) -> Amplitude {
    Amplitude::real(t.sqrt())
}

fn reflection(t: f64) -> Amplitude {
    Amplitude::I.scale((1.0 - t).sqrt())
}

/// The `[D0, D1, absorbed]` alternative graphs of an amplitude-mode run.
pub fn outcome_graphs(config: &ExperimentConfig) -> Vec<Outcome> {
    let (t1, r1) = (transmission(config.splitter1), reflection(config.splitter1));
    let (t2, r2) = (transmission(config.splitter2), reflection(config.splitter2));
    let u = phase(config.phase);
    let recorded = config.detector_model.records_which_way();

    // The block sits upstream of the phase element, so absorbed weight never
    // passes through it. With one arm blocked the element would only put a
    // global phase on the lone surviving path, so it is left out.
    let upper_to = |last: Amplitude| match config.blocked_arm {
        BlockedArm::None => AlternativeGraph::sequence([t1, u, last]),
        _ => AlternativeGraph::sequence([t1, last]),
    };
    let lower_to = |last: Amplitude| AlternativeGraph::sequence([r1, last]);
    let port = |upper: AlternativeGraph, lower: AlternativeGraph| match config.blocked_arm {
        BlockedArm::None => AlternativeGraph::branch(vec![upper, lower], recorded),
        BlockedArm::Upper => lower,
        BlockedArm::Lower => upper,
    };
    let absorbed = match config.blocked_arm {
        BlockedArm::None => AlternativeGraph::leaf(Amplitude::ZERO),
        BlockedArm::Upper => AlternativeGraph::leaf(t1),
        BlockedArm::Lower => AlternativeGraph::leaf(r1),
    };
    vec![
        Outcome::new("D0", port(upper_to(r2), lower_to(t2))),
        Outcome::new("D1", port(upper_to(t2), lower_to(r2))),
        Outcome::new("absorbed", absorbed),
    ]
}

fn simulate_amplitude(config: &ExperimentConfig) -> Result<OutcomeDistribution, InterferenceError> {
    let eval = evaluate(&outcome_graphs(config), &SquaredNorm)?;
    let (p_d0, p_d1) = (eval.normalized[0], eval.normalized[1]);
    // Loss is the complement of detection.
    let p_absorbed = (1.0 - (p_d0 + p_d1)).max(0.0);
    Ok(OutcomeDistribution::new(p_d0, p_d1, p_absorbed))
}

/// Mixture over the two paths, `P = sum_k w_k P_k`. No phase enters.
fn simulate_classical(config: &ExperimentConfig) -> OutcomeDistribution {
    let [w_upper, w_lower] = config.path_weights();
    let t2 = config.splitter2;
    let r2 = 1.0 - t2;
    // Per-path output distributions [D0, D1, absorbed].
    let upper = match config.blocked_arm {
        BlockedArm::Upper => [0.0, 0.0, 1.0],
        _ => [r2, t2, 0.0],
    };
    let lower = match config.blocked_arm {
        BlockedArm::Lower => [0.0, 0.0, 1.0],
        _ => [t2, r2, 0.0],
    };
    let mix = |k: usize| w_upper * upper[k] + w_lower * lower[k];
    OutcomeDistribution::new(mix(0), mix(1), mix(2))
}

pub fn simulate(config: &ExperimentConfig) -> Result<OutcomeDistribution, InterferenceError> {
    config.validate()?;
    match config.composition {
        Composition::Amplitude => simulate_amplitude(config),
        Composition::ClassicalMixture => Ok(simulate_classical(config)),
    }
}

/// Runs [`simulate`] at every phase in `phis`.
pub fn phase_sweep(
    config: &ExperimentConfig,
    phis: &[f64],
) -> Result<Vec<SweepRow>, InterferenceError> {
    if phis.is_empty() {
        return Err(InterferenceError::TooFewPhases { min: 1, got: 0 });
    }
    phis.iter()
        .map(|&phi| {
            if !phi.is_finite() {
                return Err(InterferenceError::NonFinitePhase(phi));
            }
            Ok(SweepRow {
                phi,
                distribution: simulate(&config.with_phase(phi))?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interference::DetectorModel;
    use std::f64::consts::PI;

    #[test]
    fn blocked_upper_arm_quarter_quarter_half() {
        let config = ExperimentConfig {
            blocked_arm: BlockedArm::Upper,
            ..Default::default()
        };
        for k in 0..64 {
            let d = simulate(&config.with_phase(k as f64 * 0.1)).unwrap();
            assert_eq!((d.p_d0, d.p_d1, d.p_absorbed), (0.25, 0.25, 0.5));
            assert_eq!(d.p_d0_given_detected, Some(0.5));
            assert_eq!(d.p_d1_given_detected, Some(0.5));
        }
    }

    #[test]
    fn bright_port_at_zero_phase() {
        let d = simulate(&ExperimentConfig::default()).unwrap();
        assert!((d.p_d0 - 1.0).abs() < 1e-15);
        assert!(d.p_d1.abs() < 1e-15);
        assert!(d.p_absorbed.abs() < 1e-15);
    }

    #[test]
    fn fringe_follows_cos_squared() {
        let rows = phase_sweep(&ExperimentConfig::default(), &[0.0, PI / 2.0, PI]).unwrap();
        let p: Vec<f64> = rows.iter().map(|r| r.distribution.p_d0).collect();
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert!((p[1] - 0.5).abs() < 1e-12);
        assert!(p[2].abs() < 1e-12);
    }

    #[test]
    fn classical_mode_ignores_phase() {
        let config = ExperimentConfig::classical([0.3, 0.7]);
        let a = simulate(&config).unwrap();
        let b = simulate(&config.with_phase(1.7)).unwrap();
        assert!(a.bit_identical(&b));
        // 0.3 * 0.5 + 0.7 * 0.5
        assert!((a.p_d0 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn recording_detector_flattens_fringe() {
        let config = ExperimentConfig {
            detector_model: DetectorModel::NonDemolishingRecording,
            ..Default::default()
        };
        for phi in [0.0, 1.0, PI] {
            let d = simulate(&config.with_phase(phi)).unwrap();
            assert!((d.p_d0 - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn fully_blocked_detection_has_no_conditionals() {
        let config = ExperimentConfig {
            splitter1: 1.0,
            blocked_arm: BlockedArm::Upper,
            ..Default::default()
        };
        let d = simulate(&config).unwrap();
        assert_eq!((d.p_d0, d.p_d1, d.p_absorbed), (0.0, 0.0, 1.0));
        assert_eq!(d.p_d0_given_detected, None);
    }

    #[test]
    fn sweep_errors() {
        assert!(phase_sweep(&ExperimentConfig::default(), &[]).is_err());
        assert!(phase_sweep(&ExperimentConfig::default(), &[f64::NAN]).is_err());
        let bad = ExperimentConfig {
            splitter1: 2.0,
            ..Default::default()
        };
        assert!(matches!(simulate(&bad), Err(InterferenceError::Config(_))));
    }

    #[test]
    fn single_phase_sweep_matches_simulate() {
        let config = ExperimentConfig::default();
        let rows = phase_sweep(&config, &[0.0]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0]
            .distribution
            .bit_identical(&simulate(&config).unwrap()));
    }
}
