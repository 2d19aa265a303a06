//! File formats, run manifests and the property-check registry.

mod error;
mod events;
mod format;
mod manifest;
mod phis;
pub mod properties;
mod schema;
mod suite;
mod sweep_csv;

pub use error::HarnessError;
pub use events::{parse_events_csv, transform_events, write_transform_csv, TransformRow};
pub use format::{fmt_f64, parse_f64};
pub use manifest::{RunManifest, Tolerances};
pub use phis::{linspace, parse_phis, periodic_phases, PhaseGrid};
pub use schema::{
    experiment_from_json, experiment_to_json, MapSpec, Report, ReportEntry, SCHEMA_VERSION,
};
pub use suite::{run_suite, selectors, CheckContext, SuperluminalBuilder};
pub use sweep_csv::{parse_sweep_csv, write_sweep_csv, SWEEP_HEADER};
