use serde::Serialize;

use super::{
    phase_sweep, simulate, BlockedArm, Composition, DetectorModel, ExperimentConfig,
    InterferenceError, SweepRow,
};
use crate::kinematics::{
    classify_interval, lorentz_boost, IntervalKind, KinematicsError, SpacetimePoint, SpeedOfLight,
};

/// Fringe contrast of `p_d0` over a sweep; `0/0` is reported as 0, as is an
/// empty sweep.
pub fn visibility(sweep: &[SweepRow]) -> f64 {
    let (lo, hi) = sweep
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.distribution.p_d0), hi.max(r.distribution.p_d0))
        });
    if sweep.is_empty() || hi + lo == 0.0 {
        0.0
    } else {
        (hi - lo) / (hi + lo)
    }
}

/// Largest `max - min` over the sweep of any of the five output quantities.
fn phase_variation(sweep: &[SweepRow]) -> f64 {
    (0..5)
        .map(|k| {
            let vals: Vec<f64> = sweep
                .iter()
                .map(|r| r.distribution.as_array()[k])
                .filter(|v| !v.is_nan())
                .collect();
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if vals.is_empty() {
                0.0
            } else {
                hi - lo
            }
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoGoReport {
    pub phases: usize,
    pub resolution: usize,
    pub configs_checked: usize,
    /// Max over classical configs of the phi-variation of any output.
    pub max_classical_variation: f64,
    pub worst_config: ExperimentConfig,
    /// Visibility of the balanced amplitude-mode interferometer on the same phases.
    pub amplitude_visibility: f64,
}

impl NoGoReport {
    pub fn classical_is_phase_blind(&self) -> bool {
        self.max_classical_variation == 0.0
    }
}

/// Splitter-2 transmissivities explored alongside the weight simplex.
const SPLITTER2_VARIANTS: [f64; 3] = [0.5, 0.2, 0.9];

/// Brute force over classical-mixture configurations: every weight on a
/// `resolution`-point simplex grid, every blocking and detector variant and a
/// few second-splitter ratios. Configurations are visited in a fixed order,
/// so the report is deterministic.
pub fn no_go_search(phis: &[f64], resolution: usize) -> Result<NoGoReport, InterferenceError> {
    if phis.len() < 2 {
        return Err(InterferenceError::TooFewPhases {
            min: 2,
            got: phis.len(),
        });
    }
    if resolution < 2 {
        return Err(InterferenceError::BadResolution(resolution));
    }
    let mut checked = 0;
    let mut worst = (f64::NEG_INFINITY, ExperimentConfig::default());
    for i in 0..resolution {
        let w = i as f64 / (resolution - 1) as f64;
        for blocked_arm in BlockedArm::ALL {
            for detector_model in DetectorModel::ALL {
                for splitter2 in SPLITTER2_VARIANTS {
                    let config = ExperimentConfig {
                        splitter2,
                        blocked_arm,
                        detector_model,
                        composition: Composition::ClassicalMixture,
                        mixture_weights: Some([w, 1.0 - w]),
                        ..Default::default()
                    };
                    let variation = phase_variation(&phase_sweep(&config, phis)?);
                    checked += 1;
                    if variation > worst.0 {
                        worst = (variation, config);
                    }
                }
            }
        }
    }
    let amplitude_visibility = visibility(&phase_sweep(&ExperimentConfig::default(), phis)?);
    Ok(NoGoReport {
        phases: phis.len(),
        resolution,
        configs_checked: checked,
        max_classical_variation: worst.0,
        worst_config: worst.1,
        amplitude_visibility,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct O1Row {
    pub model: DetectorModel,
    pub records_which_way: bool,
    pub visibility: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct O1Report {
    pub rows: Vec<O1Row>,
}

impl O1Report {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Sweeps the balanced interferometer under every detector model. Recording
/// models must kill the fringe (visibility <= 1e-12); silent ones must keep it
/// (>= 1 - 1e-9), which presumes `phis` spans a full period.
pub fn check_o1_robustness(phis: &[f64]) -> Result<O1Report, InterferenceError> {
    if phis.len() < 2 {
        return Err(InterferenceError::TooFewPhases {
            min: 2,
            got: phis.len(),
        });
    }
    let rows = DetectorModel::ALL
        .iter()
        .map(|&model| {
            let config = ExperimentConfig {
                detector_model: model,
                ..Default::default()
            };
            let v = visibility(&phase_sweep(&config, phis)?);
            let pass = if model.records_which_way() {
                v <= 1e-12
            } else {
                v >= 1.0 - 1e-9
            };
            Ok(O1Row {
                model,
                records_which_way: model.records_which_way(),
                visibility: v,
                pass,
            })
        })
        .collect::<Result<_, InterferenceError>>()?;
    Ok(O1Report { rows })
}

/// Emission, splitting, mirror, recombination and detection events of a
/// folded 1+1 interferometer with arm length `arm_length`; light moves at `c`.
pub fn interferometer_events(
    arm_length: f64,
    c: SpeedOfLight,
) -> Result<Vec<(&'static str, SpacetimePoint)>, KinematicsError> {
    let l = arm_length;
    let dt = l / c.value();
    [
        ("emission", 0.0, 0.0),
        ("splitter1", dt, l),
        ("mirror_upper", 2.0 * dt, 2.0 * l),
        ("mirror_lower", 2.0 * dt, 0.0),
        ("splitter2", 3.0 * dt, l),
        ("detector_d0", 4.0 * dt, 2.0 * l),
        ("detector_d1", 4.0 * dt, 0.0),
    ]
    .into_iter()
    .map(|(name, t, x)| Ok((name, SpacetimePoint::new(t, x)?)))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameRow {
    pub velocity: f64,
    pub classes_unchanged: bool,
    pub statistics_identical: bool,
    pub spacelike_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct O3Report {
    pub rows: Vec<FrameRow>,
}

impl O3Report {
    pub fn pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.classes_unchanged && r.statistics_identical)
    }
}

fn pair_classes(
    events: &[SpacetimePoint],
    c: SpeedOfLight,
) -> Result<Vec<IntervalKind>, KinematicsError> {
    let mut out = Vec::new();
    for (i, a) in events.iter().enumerate() {
        for b in &events[i + 1..] {
            out.push(classify_interval(a, b, c)?.kind);
        }
    }
    Ok(out)
}

/// Re-describes the interferometer's event table in each boosted frame and
/// confirms that interval classes and the predicted statistics do not change.
pub fn check_o3_frame_invariance(
    config: &ExperimentConfig,
    boosts: &[f64],
    c: SpeedOfLight,
) -> Result<O3Report, InterferenceError> {
    let events: Vec<SpacetimePoint> = interferometer_events(1.0, c)?
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let reference_classes = pair_classes(&events, c)?;
    let reference_stats = simulate(config)?;
    let rows = boosts
        .iter()
        .map(|&v| {
            let boosted = events
                .iter()
                .map(|p| lorentz_boost(p, v, c))
                .collect::<Result<Vec<_>, _>>()?;
            let classes = pair_classes(&boosted, c)?;
            // The description holds only frame scalars, so the boosted
            // observer simulates the very same configuration.
            let stats = simulate(config)?;
            Ok(FrameRow {
                velocity: v,
                classes_unchanged: classes == reference_classes,
                statistics_identical: stats.bit_identical(&reference_stats),
                spacelike_pairs: classes
                    .iter()
                    .filter(|k| **k == IntervalKind::Spacelike)
                    .count(),
            })
        })
        .collect::<Result<_, InterferenceError>>()?;
    Ok(O3Report { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn full_period(n: usize) -> Vec<f64> {
        (0..n).map(|k| k as f64 * 2.0 * PI / n as f64).collect()
    }

    #[test]
    fn visibility_examples() {
        let ideal = phase_sweep(&ExperimentConfig::default(), &full_period(32)).unwrap();
        assert!((visibility(&ideal) - 1.0).abs() < 1e-12);
        let classical =
            phase_sweep(&ExperimentConfig::classical([0.5, 0.5]), &full_period(32)).unwrap();
        assert_eq!(visibility(&classical), 0.0);
        let recorded = ExperimentConfig {
            detector_model: DetectorModel::AbsorbAndReemitRecording,
            ..Default::default()
        };
        assert!(visibility(&phase_sweep(&recorded, &full_period(32)).unwrap()) <= 1e-12);
        assert_eq!(visibility(&[]), 0.0);
    }

    #[test]
    fn no_go_small_grid() {
        let report = no_go_search(&full_period(8), 5).unwrap();
        assert_eq!(report.configs_checked, 5 * 3 * 4 * 3);
        assert!(report.classical_is_phase_blind());
        assert!(report.amplitude_visibility > 1.0 - 1e-12);
        assert!(no_go_search(&[0.0], 5).is_err());
        assert!(no_go_search(&[0.0, 1.0], 1).is_err());
    }

    #[test]
    fn single_path_mixture_is_phase_blind() {
        let config = ExperimentConfig::classical([1.0, 0.0]);
        let sweep = phase_sweep(&config, &full_period(16)).unwrap();
        assert_eq!(phase_variation(&sweep), 0.0);
    }

    #[test]
    fn detector_models() {
        let report = check_o1_robustness(&full_period(16)).unwrap();
        assert!(report.pass());
        let silent = report
            .rows
            .iter()
            .find(|r| r.model == DetectorModel::NonDemolishingSilent)
            .unwrap();
        assert!((silent.visibility - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frame_invariance() {
        let report = check_o3_frame_invariance(
            &ExperimentConfig::default(),
            &[0.0, 0.6, -0.9, 0.99],
            SpeedOfLight::NATURAL,
        )
        .unwrap();
        assert!(report.pass());
        assert!(report.rows.iter().all(|r| r.spacelike_pairs > 0));
        assert!(check_o3_frame_invariance(
            &ExperimentConfig::default(),
            &[1.0],
            SpeedOfLight::NATURAL
        )
        .is_err());
    }
}
