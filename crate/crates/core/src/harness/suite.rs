use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::properties::{self as p, CheckOutcome};
use super::{HarnessError, PhaseGrid, Report, ReportEntry, RunManifest, Tolerances};
use crate::amplitudes::EXPONENT_GRID;
use crate::kinematics::{FrameMap, SpeedOfLight};

pub use super::properties::SuperluminalBuilder;

/// Inputs shared by every check in a run.
#[derive(Debug, Clone)]
pub struct CheckContext {
    pub seed: u64,
    pub trials: usize,
    pub resolution: usize,
    pub phis: PhaseGrid,
    pub c: SpeedOfLight,
    pub tolerances: Tolerances,
    pub superluminal: SuperluminalBuilder,
}

impl CheckContext {
    pub fn from_manifest(m: &RunManifest) -> Self {
        CheckContext {
            seed: m.seed,
            trials: m.trials,
            resolution: m.resolution,
            phis: m.phis,
            c: SpeedOfLight::NATURAL,
            tolerances: m.tolerances,
            superluminal: FrameMap::superluminal,
        }
    }

    /// Each check draws from its own stream so adding or skipping checks
    /// never shifts another check's samples.
    fn rng_for(&self, id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(id))
    }
}

impl Default for CheckContext {
    fn default() -> Self {
        CheckContext::from_manifest(&RunManifest::new("check"))
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

struct Check {
    id: &'static str,
    paper_ref: &'static str,
    tags: &'static [&'static str],
    run: fn(&CheckContext, &mut ChaCha8Rng) -> CheckOutcome,
}

const CHECKS: &[Check] = &[
    Check {
        id: "interval-flip",
        paper_ref: "interval flip on the superluminal branch",
        tags: &["kinematics", "interval"],
        run: |ctx, rng| {
            p::interval_flip(
                rng,
                ctx.trials,
                ctx.c,
                ctx.tolerances.interval_rel,
                ctx.superluminal,
            )
        },
    },
    Check {
        id: "interval-preservation",
        paper_ref: "interval invariance on the subluminal branch",
        tags: &["kinematics", "interval"],
        run: |ctx, rng| {
            p::interval_preservation(rng, ctx.trials, ctx.c, ctx.tolerances.interval_rel)
        },
    },
    Check {
        id: "double-flip",
        paper_ref: "interval flip applied twice",
        tags: &["kinematics", "interval"],
        run: |ctx, rng| {
            p::double_flip(
                rng,
                ctx.trials,
                ctx.c,
                ctx.tolerances.interval_rel,
                ctx.superluminal,
            )
        },
    },
    Check {
        id: "velocity-addition",
        paper_ref: "subluminal boost composition",
        tags: &["kinematics"],
        run: |ctx, rng| p::velocity_addition(rng, ctx.trials, ctx.c, ctx.tolerances.interval_rel),
    },
    Check {
        id: "cone-agreement",
        paper_ref: "admissible redescriptions preserve null lines",
        tags: &["kinematics", "cone"],
        run: |ctx, rng| p::cone_agreement_1p1(rng, ctx.trials, ctx.c),
    },
    Check {
        id: "cone-classification",
        paper_ref: "null-cone-preserving linear maps are conformal Lorentz",
        tags: &["kinematics", "cone"],
        run: |ctx, rng| p::cone_classification_check(rng, ctx.trials, ctx.c, ctx.tolerances.cone),
    },
    Check {
        id: "causal-past",
        paper_ref: "physical causal past",
        tags: &["kinematics"],
        run: |ctx, rng| p::causal_past_invariance(rng, ctx.trials, ctx.c),
    },
    Check {
        id: "no-branching",
        paper_ref: "no-branching lemma",
        tags: &["kinematics", "no-branching"],
        run: |ctx, rng| p::no_branching(rng, ctx.trials, ctx.c),
    },
    Check {
        id: "a1-sum-rule",
        paper_ref: "A1",
        tags: &["amplitudes", "A1"],
        run: |ctx, rng| p::sum_rule(rng, ctx.trials),
    },
    Check {
        id: "a2-product-rule",
        paper_ref: "A2",
        tags: &["amplitudes", "A2"],
        run: |ctx, rng| p::product_rule(rng, ctx.trials),
    },
    Check {
        id: "a3-interference",
        paper_ref: "A3",
        tags: &["amplitudes", "A3"],
        run: |_, _| p::interference_witness(),
    },
    Check {
        id: "a4-phase-symmetry",
        paper_ref: "A4 / minimal carrier proposition",
        tags: &["amplitudes", "A4"],
        run: |ctx, rng| p::phase_symmetry(rng, ctx.trials, &EXPONENT_GRID),
    },
    Check {
        id: "probability-rule",
        paper_ref: "minimal probability rule",
        tags: &["amplitudes"],
        run: |ctx, rng| p::probability_rule_axioms(rng, ctx.trials),
    },
    Check {
        id: "o1-detector-neutrality",
        paper_ref: "O1",
        tags: &["interference", "O1"],
        run: |ctx, _| p::detector_neutrality(&ctx.phis.values()),
    },
    Check {
        id: "blocked-arm",
        paper_ref: "O1 / blocked-arm loss channel",
        tags: &["interference", "O1"],
        run: |ctx, _| p::blocked_arm(&ctx.phis.values()),
    },
    Check {
        id: "o2-fringe",
        paper_ref: "O2",
        tags: &["interference", "O2"],
        run: |ctx, _| p::loop_completeness(ctx.resolution.max(ctx.phis.steps) * 10),
    },
    Check {
        id: "o2-no-go",
        paper_ref: "O2 / no-go proposition",
        tags: &["interference", "O2", "no-go"],
        run: |ctx, _| p::no_go(&ctx.phis.values(), ctx.resolution),
    },
    Check {
        id: "normalization",
        paper_ref: "classical mixture and operational normalization",
        tags: &["interference"],
        run: |ctx, rng| p::normalization(rng, ctx.trials),
    },
    Check {
        id: "o3-frame-invariance",
        paper_ref: "O3",
        tags: &["interference", "O3"],
        run: |ctx, rng| p::frame_invariance(rng, ctx.trials, ctx.c),
    },
];

/// Every accepted selector: `all`, each check id, and each tag.
pub fn selectors() -> Vec<&'static str> {
    let mut out = vec!["all"];
    for check in CHECKS {
        out.push(check.id);
        for tag in check.tags {
            if !out.contains(tag) {
                out.push(tag);
            }
        }
    }
    out
}

fn matches(check: &Check, selector: &str) -> bool {
    selector == "all" || check.id == selector || check.tags.contains(&selector)
}

/// Runs the checks picked by `selector` (comma-separated selectors are
/// unioned) in registry order.
pub fn run_suite(selector: &str, ctx: &CheckContext) -> Result<Report, HarnessError> {
    let parts: Vec<&str> = selector.split(',').map(str::trim).collect();
    for part in &parts {
        if !selectors().contains(part) {
            return Err(HarnessError::UnknownSelector {
                selector: part.to_string(),
                valid: selectors().join(", "),
            });
        }
    }
    let checks = CHECKS
        .iter()
        .filter(|c| parts.iter().any(|s| matches(c, s)))
        .map(|c| {
            let outcome = (c.run)(ctx, &mut ctx.rng_for(c.id));
            ReportEntry {
                id: c.id.into(),
                paper_ref: c.paper_ref.into(),
                pass: outcome.pass,
                detail: outcome.detail,
            }
        })
        .collect();
    Ok(Report {
        suite: selector.into(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{Eta, KinematicsError};

    fn small() -> CheckContext {
        CheckContext {
            trials: 50,
            ..Default::default()
        }
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = CHECKS.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
    }

    #[test]
    fn full_suite_passes_and_cites_every_postulate() {
        let report = run_suite("all", &small()).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{}: {}", c.id, c.detail);
        }
        for label in ["O1", "O2", "O3", "A1", "A2", "A3", "A4"] {
            assert!(
                report.checks.iter().any(|c| c.paper_ref.contains(label)),
                "{label}"
            );
        }
    }

    #[test]
    fn o2_selector_is_loop_completeness_only() {
        let report = run_suite("O2", &small()).unwrap();
        let ids: Vec<_> = report.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["o2-fringe", "o2-no-go"]);
    }

    #[test]
    fn unknown_selector_is_rejected() {
        assert!(matches!(
            run_suite("O4", &small()),
            Err(HarnessError::UnknownSelector { .. })
        ));
    }

    fn mutated(v: f64, eta: Eta, c: SpeedOfLight) -> Result<FrameMap, KinematicsError> {
        let m = FrameMap::superluminal(v, eta, c)?;
        let mut linear = m.linear().clone();
        linear[(0, 1)] = -linear[(0, 1)];
        FrameMap::general(linear, m.translation().clone(), c)
    }

    #[test]
    fn sign_mutation_breaks_interval_suite() {
        let ctx = CheckContext {
            superluminal: mutated,
            ..small()
        };
        let report = run_suite("interval", &ctx).unwrap();
        assert!(!report.all_pass());
        assert!(
            !report
                .checks
                .iter()
                .find(|c| c.id == "interval-flip")
                .unwrap()
                .pass
        );
    }

    #[test]
    fn same_seed_same_report() {
        let a = run_suite("kinematics", &small()).unwrap();
        let b = run_suite("kinematics", &small()).unwrap();
        assert_eq!(a, b);
    }
}
