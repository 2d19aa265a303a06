//! Verification laboratory for relativistic kinematics and loop interference.
//!
//! Three layers are kept apart:
//!
//! * [`kinematics`]: 1+1 Lorentz boosts, the formal superluminal branch with its
//!   sign choice, interval and null-cone classification, causal pasts and the
//!   worldline no-branching check.
//! * [`amplitudes`]: a two-real-dimensional amplitude carrier, series/parallel
//!   composition of alternatives and pluggable probability rules.
//! * [`interference`]: a Mach-Zehnder benchmark that runs either the amplitude
//!   calculus or a classical mixture rule, plus the brute-force checks built on it.
//!
//! [`harness`] ties them together: file formats, the run manifest and the
//! registry of property checks behind the `check` command.

pub mod amplitudes;
pub mod harness;
pub mod interference;
pub mod kinematics;
pub mod tolerance;
