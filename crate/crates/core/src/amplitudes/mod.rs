//! Minimal amplitude calculus.
//!
//! Amplitudes live on a two-real-dimensional carrier with complex
//! multiplication. Indistinguishable alternatives add, concatenated segments
//! multiply, and a probability rule maps the final amplitudes to weights.
//! Which-way records are tracked explicitly so that distinguishable
//! alternatives reduce to a classical sum of weights.

mod amplitude;
mod carrier;
mod error;
mod graph;
mod rule;

pub use amplitude::{concat, phase, sum_alternatives, Amplitude};
pub use carrier::{
    carrier_minimality_check, one_dim_action, CarrierReport, CarrierRow, EXPONENT_GRID,
};
pub use error::AmplitudeError;
pub use graph::{evaluate, AlternativeGraph, Evaluation, Outcome};
pub use rule::{
    check_additivity, check_global_phase_invariance, registered_rules, rule_by_name, FnRule,
    ProbabilityRule, SquaredNorm, NORM, REAL_PART_SQUARED,
};
