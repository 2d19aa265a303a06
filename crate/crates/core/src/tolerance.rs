//! Shared numeric tolerances.

/// Relative tolerance for closed-form interval identities.
pub const INTERVAL_REL_TOL: f64 = 1e-12;

/// Relative tolerance for sampled null-cone checks and cone-form fitting.
pub const CONE_TOL: f64 = 1e-9;

/// Speeds with `| |V|/c - 1 |` below this are rejected by both boost branches.
pub const LIGHT_SPEED_GUARD: f64 = 1e-12;

/// Segment-contact distance for polyline simplicity, relative to the
/// polyline's bounding-box diagonal.
pub const GEOMETRY_TOL: f64 = 1e-9;

/// Absolute tolerance for amplitude algebra and probability identities.
pub const AMPLITUDE_TOL: f64 = 1e-12;

/// Returns true if `a` and `b` agree to within `rel` relative to `scale`.
///
/// `scale` should be the magnitude of the quantities that produced `a` and `b`,
/// since an interval near zero can be the difference of two large squares.
pub fn close_rel(a: f64, b: f64, rel: f64, scale: f64) -> bool {
    (a - b).abs() <= rel * scale.abs().max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_comparison_scales() {
        assert!(close_rel(1e6, 1e6 + 1e-7, 1e-12, 1e6));
        assert!(!close_rel(1.0, 1.0 + 1e-9, 1e-12, 1.0));
        assert!(close_rel(0.0, 0.0, 1e-12, 0.0));
    }
}
