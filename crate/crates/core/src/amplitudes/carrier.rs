//! Why a one-dimensional real carrier cannot host a phase action.
//!
//! Continuous one-parameter multiplicative actions on the real line are
//! `u_s(phi) = exp(s * phi)`. Each one either leaves every norm-based weight
//! alone (`s = 0`, where relative phase does nothing) or rescales it (`s != 0`,
//! breaking global-phase invariance). Rotations of the plane manage both.

use serde::Serialize;

use super::{phase, Amplitude, AmplitudeError};
use crate::tolerance::AMPLITUDE_TOL;

/// Exponents probed on the 1D carrier: both signs, several scales and zero.
pub const EXPONENT_GRID: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];

/// Real amplitudes used as probes on the 1D carrier.
const PROBES: [f64; 3] = [1.0, -0.6, 2.5];

/// The 1D action `u_s(phi) = exp(s * phi)`.
pub fn one_dim_action(s: f64, phi: f64) -> f64 {
    (s * phi).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarrierRow {
    pub s: f64,
    /// `P(u_s(phi) A) = P(A)` for every probe and grid phase.
    pub phase_invariant: bool,
    /// Some grid phase, applied to one of two recombining alternatives,
    /// changes the recombined weight.
    pub relative_phase_matters: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarrierReport {
    pub rows_1d: Vec<CarrierRow>,
    pub plane_phase_invariant: bool,
    pub plane_relative_phase_matters: bool,
}

impl CarrierReport {
    /// No 1D action achieves both properties while the plane does.
    pub fn witnesses_minimality(&self) -> bool {
        self.rows_1d
            .iter()
            .all(|r| !(r.phase_invariant && r.relative_phase_matters))
            && self.plane_phase_invariant
            && self.plane_relative_phase_matters
    }
}

fn weight(a: f64) -> f64 {
    a * a
}

fn differs(a: f64, b: f64) -> bool {
    (a - b).abs() > AMPLITUDE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Runs both probes over `grid` for every exponent in [`EXPONENT_GRID`] and
/// for the planar rotation action.
pub fn carrier_minimality_check(grid: &[f64]) -> Result<CarrierReport, AmplitudeError> {
    if grid.is_empty() {
        return Err(AmplitudeError::EmptyGrid);
    }
    let rows_1d = EXPONENT_GRID
        .iter()
        .map(|&s| {
            let phase_invariant = grid.iter().all(|&phi| {
                PROBES
                    .iter()
                    .all(|&a| !differs(weight(one_dim_action(s, phi) * a), weight(a)))
            });
            let relative_phase_matters = grid.iter().any(|&phi| {
                PROBES.iter().any(|&a| {
                    let shifted = a + one_dim_action(s, phi) * a;
                    let reference = a + a;
                    differs(weight(shifted), weight(reference))
                })
            });
            CarrierRow {
                s,
                phase_invariant,
                relative_phase_matters,
            }
        })
        .collect();

    let probes: Vec<Amplitude> = PROBES.iter().map(|&a| Amplitude::new(a, 0.5 * a)).collect();
    let plane_phase_invariant = grid.iter().all(|&phi| {
        probes
            .iter()
            .all(|&a| !differs((phase(phi) * a).norm_sqr(), a.norm_sqr()))
    });
    let plane_relative_phase_matters = grid.iter().any(|&phi| {
        probes.iter().any(|&a| {
            let shifted = (a + phase(phi) * a).norm_sqr();
            differs(shifted, (a + a).norm_sqr())
        })
    });

    Ok(CarrierReport {
        rows_1d,
        plane_phase_invariant,
        plane_relative_phase_matters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> Vec<f64> {
        (0..16).map(|k| k as f64 * 2.0 * PI / 16.0).collect()
    }

    #[test]
    fn trivial_action() {
        let report = carrier_minimality_check(&grid()).unwrap();
        let zero = report.rows_1d.iter().find(|r| r.s == 0.0).unwrap();
        assert!(zero.phase_invariant);
        assert!(!zero.relative_phase_matters);
    }

    #[test]
    fn scaling_action_breaks_invariance() {
        // exp(2 * 1 * ln 2) = 4
        let a = 0.7;
        let ratio = weight(one_dim_action(1.0, 2f64.ln()) * a) / weight(a);
        assert!((ratio - 4.0).abs() < 1e-14);
        let report = carrier_minimality_check(&[2f64.ln()]).unwrap();
        let one = report.rows_1d.iter().find(|r| r.s == 1.0).unwrap();
        assert!(!one.phase_invariant);
        assert!(one.relative_phase_matters);
    }

    #[test]
    fn plane_has_both_and_minimality_is_witnessed() {
        let report = carrier_minimality_check(&grid()).unwrap();
        assert!(report.plane_phase_invariant);
        assert!(report.plane_relative_phase_matters);
        assert!(report.witnesses_minimality());
        for row in &report.rows_1d {
            assert!(
                !(row.phase_invariant && row.relative_phase_matters),
                "{row:?}"
            );
        }
    }

    #[test]
    fn empty_grid_rejected() {
        assert_eq!(
            carrier_minimality_check(&[]),
            Err(AmplitudeError::EmptyGrid)
        );
    }
}
