use serde::{Deserialize, Serialize};

use super::{KinematicsError, SpacetimePoint, SpeedOfLight};
use crate::tolerance::INTERVAL_REL_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    Timelike,
    Spacelike,
    Null,
}

/// A signed interval `|dx|^2 - c^2 dt^2` together with its causal class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalClass {
    pub value: f64,
    pub kind: IntervalKind,
}

impl IntervalClass {
    /// Classifies `value` with an absolute tolerance `tol`.
    pub fn from_value(value: f64, tol: f64) -> Self {
        let kind = if value.abs() <= tol {
            IntervalKind::Null
        } else if value < 0.0 {
            IntervalKind::Timelike
        } else {
            IntervalKind::Spacelike
        };
        IntervalClass { value, kind }
    }
}

/// Returns `(interval, scale)` for the separation vector `[dt, dx...]`, where
/// `scale = |dx|^2 + c^2 dt^2` is the Euclidean size the tolerance refers to.
pub(crate) fn quadratic_form(sep: &[f64], c: SpeedOfLight) -> (f64, f64) {
    let ct = c.value() * sep[0];
    let space: f64 = sep[1..].iter().map(|v| v * v).sum();
    (space - ct * ct, space + ct * ct)
}

/// The interval between two events.
pub fn interval(
    a: &SpacetimePoint,
    b: &SpacetimePoint,
    c: SpeedOfLight,
) -> Result<f64, KinematicsError> {
    let sep = a.separation_to(b)?;
    Ok(quadratic_form(sep.as_slice(), c).0)
}

/// Classifies the separation of `a` and `b`.
///
/// The null band is relative: `|value| <= 1e-12 * (|dx|^2 + c^2 dt^2)`.
pub fn classify_interval(
    a: &SpacetimePoint,
    b: &SpacetimePoint,
    c: SpeedOfLight,
) -> Result<IntervalClass, KinematicsError> {
    let sep = a.separation_to(b)?;
    let (value, scale) = quadratic_form(sep.as_slice(), c);
    Ok(IntervalClass::from_value(value, INTERVAL_REL_TOL * scale))
}

/// Whether `candidate` lies in the causal past of `e` under the standard
/// light cone: timelike or null separation, and not later in coordinate time.
pub fn in_causal_past(
    e: &SpacetimePoint,
    candidate: &SpacetimePoint,
    c: SpeedOfLight,
) -> Result<bool, KinematicsError> {
    let class = classify_interval(candidate, e, c)?;
    Ok(class.kind != IntervalKind::Spacelike && candidate.t() <= e.t())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: f64, x: f64) -> SpacetimePoint {
        SpacetimePoint::new(t, x).unwrap()
    }

    const C: SpeedOfLight = SpeedOfLight::NATURAL;

    #[test]
    fn classification_examples() {
        let o = p(0.0, 0.0);
        let tl = classify_interval(&o, &p(1.0, 0.0), C).unwrap();
        assert_eq!((tl.value, tl.kind), (-1.0, IntervalKind::Timelike));
        let nl = classify_interval(&o, &p(1.0, 1.0), C).unwrap();
        assert_eq!((nl.value, nl.kind), (0.0, IntervalKind::Null));
        // 2^2 - 0.5^2
        let sl = classify_interval(&o, &p(0.5, 2.0), C).unwrap();
        assert_eq!((sl.value, sl.kind), (3.75, IntervalKind::Spacelike));
    }

    #[test]
    fn causal_past_examples() {
        assert!(in_causal_past(&p(1.0, 0.0), &p(0.0, 0.0), C).unwrap());
        assert!(!in_causal_past(&p(0.0, 0.0), &p(1.0, 0.0), C).unwrap());
        assert!(!in_causal_past(&p(0.0, 0.0), &p(0.0, 5.0), C).unwrap());
        // light ray into e and e itself
        assert!(in_causal_past(&p(2.0, 2.0), &p(0.0, 0.0), C).unwrap());
        assert!(in_causal_past(&p(2.0, 2.0), &p(2.0, 2.0), C).unwrap());
    }

    #[test]
    fn null_band_is_relative() {
        // Large null separation with a rounding-level residual stays null.
        let a = p(0.0, 0.0);
        let b = p(1e8, 1e8 * (1.0 + 1e-15));
        assert_eq!(
            classify_interval(&a, &b, C).unwrap().kind,
            IntervalKind::Null
        );
        let slow = p(1.0, 1.0 - 1e-6);
        assert_eq!(
            classify_interval(&a, &slow, C).unwrap().kind,
            IntervalKind::Timelike
        );
    }

    #[test]
    fn speed_of_light_enters_classification() {
        let c = SpeedOfLight::new(2.0).unwrap();
        assert_eq!(
            classify_interval(&p(0.0, 0.0), &p(1.0, 2.0), c)
                .unwrap()
                .kind,
            IntervalKind::Null
        );
        assert_eq!(
            classify_interval(&p(0.0, 0.0), &p(1.0, 1.5), c)
                .unwrap()
                .kind,
            IntervalKind::Timelike
        );
    }
}
