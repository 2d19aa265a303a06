//! Mach-Zehnder benchmark.
//!
//! Splitter convention: symmetric, transmission amplitude `sqrt(T)`,
//! reflection amplitude `i sqrt(1 - T)`. The upper arm is the transmitted
//! output of the first splitter and carries the tunable phase. Detector D0 is
//! the port each path reaches with exactly one reflection; with balanced
//! splitters it is bright at zero phase, `p_d0 = cos^2(phi / 2)`.

mod analysis;
mod config;
mod error;
mod simulate;

pub use analysis::{
    check_o1_robustness, check_o3_frame_invariance, interferometer_events, no_go_search,
    visibility, FrameRow, NoGoReport, O1Report, O1Row, O3Report,
};
pub use config::{BlockedArm, Composition, DetectorModel, ExperimentConfig};
pub use error::{ConfigError, FieldIssue, InterferenceError};
pub use simulate::{outcome_graphs, phase_sweep, simulate, OutcomeDistribution, SweepRow};
