use std::f64::consts::PI;

use rand::Rng;

use super::{phase, AlternativeGraph, Amplitude};
use crate::tolerance::AMPLITUDE_TOL;

/// Maps a final amplitude to a nonnegative outcome weight.
///
/// Only global-phase invariance, normalization and additivity over
/// distinguishable outcomes are required of an implementation; the squared
/// norm is the default realization, not an axiom.
pub trait ProbabilityRule: Send + Sync {
    fn name(&self) -> &str;
    fn weight(&self, a: Amplitude) -> f64;
}

/// `P(A) = |A|^2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SquaredNorm;

impl ProbabilityRule for SquaredNorm {
    fn name(&self) -> &str {
        "squared-norm"
    }

    fn weight(&self, a: Amplitude) -> f64 {
        a.norm_sqr()
    }
}

/// A rule backed by a plain function, mostly for fixtures.
#[derive(Clone, Copy)]
pub struct FnRule {
    pub name: &'static str,
    pub f: fn(Amplitude) -> f64,
}

impl std::fmt::Debug for FnRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnRule").field("name", &self.name).finish()
    }
}

impl ProbabilityRule for FnRule {
    fn name(&self) -> &str {
        self.name
    }

    fn weight(&self, a: Amplitude) -> f64 {
        (self.f)(a)
    }
}

/// Not phase invariant: rotating `(1, 0)` by a quarter turn drops it to zero.
pub const REAL_PART_SQUARED: FnRule = FnRule {
    name: "real-part-squared",
    f: |a| a.re * a.re,
};

/// Phase invariant but not calibrated for additivity of intensities.
pub const NORM: FnRule = FnRule {
    name: "norm",
    f: |a| a.norm(),
};

/// Rules offered to users; every one must pass the minimal axioms.
pub fn registered_rules() -> Vec<Box<dyn ProbabilityRule>> {
    vec![Box::new(SquaredNorm)]
}

pub fn rule_by_name(name: &str) -> Option<Box<dyn ProbabilityRule>> {
    registered_rules().into_iter().find(|r| r.name() == name)
}

fn random_amplitude<R: Rng + ?Sized>(rng: &mut R) -> Amplitude {
    Amplitude::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

/// Samples random amplitudes and phases and checks `P(u(phi) A) = P(A)`.
pub fn check_global_phase_invariance<R: Rng + ?Sized>(
    rule: &dyn ProbabilityRule,
    trials: usize,
    rng: &mut R,
) -> bool {
    (0..trials.max(1)).all(|_| {
        let a = random_amplitude(rng);
        let phi = rng.gen_range(-4.0 * PI..4.0 * PI);
        (rule.weight(phase(phi) * a) - rule.weight(a)).abs() <= AMPLITUDE_TOL
    })
}

/// Checks that a distinguishable branch weighs exactly the sum of its
/// children's weights, for random leaves.
pub fn check_additivity<R: Rng + ?Sized>(
    rule: &dyn ProbabilityRule,
    trials: usize,
    rng: &mut R,
) -> bool {
    (0..trials.max(1)).all(|_| {
        let k = rng.gen_range(2..6);
        let leaves: Vec<Amplitude> = (0..k).map(|_| random_amplitude(rng)).collect();
        let graph = AlternativeGraph::Branch {
            children: leaves.iter().copied().map(AlternativeGraph::Leaf).collect(),
            distinguishable: true,
        };
        let expected: f64 = leaves.iter().map(|&a| rule.weight(a)).sum();
        match graph.weight(rule) {
            Ok(w) => (w - expected).abs() <= AMPLITUDE_TOL * expected.max(1.0),
            Err(_) => false,
        }
    })
}
