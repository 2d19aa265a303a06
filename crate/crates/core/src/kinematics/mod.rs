//! Extended 1+1 Lorentz kinematics.
//!
//! Coordinates are ordered `(t, x)` or `(t, x, y, z)`; the speed of light is
//! carried explicitly by every map and classification. The Minkowski interval
//! used throughout is `|x|^2 - c^2 t^2`: negative for timelike separations,
//! positive for spacelike ones.

mod cone;
mod error;
mod frame;
mod interval;
mod point;
mod worldline;

pub(crate) use cone::random_unit_vector;
pub use cone::{classify_cone_preserver, preserves_null_lines, pullback_form, ConePreserver};
pub use error::KinematicsError;
pub use frame::{compose, lorentz_boost, superluminal_map, Branch, Eta, FrameMap};
pub use interval::{classify_interval, in_causal_past, interval, IntervalClass, IntervalKind};
pub use point::{Dimension, SpacetimePoint, SpeedOfLight};
pub use worldline::{
    analyze_polyline, check_no_branching, past_worldline_segment, PolylineReport, Worldline,
};
