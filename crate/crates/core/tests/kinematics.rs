use approx::assert_relative_eq;
use loopcheck_core::kinematics::{
    classify_cone_preserver, classify_interval, compose, interval, ConePreserver, Eta, FrameMap,
    IntervalKind, SpacetimePoint, SpeedOfLight,
};
use proptest::prelude::*;

fn pt(t: f64, x: f64) -> SpacetimePoint {
    SpacetimePoint::new(t, x).unwrap()
}

/// Plain-arithmetic reference for the boost.
fn boost_ref(v: f64, c: f64, t: f64, x: f64) -> (f64, f64) {
    let g = 1.0 / (1.0 - v * v / (c * c)).sqrt();
    (g * (t - v * x / (c * c)), g * (x - v * t))
}

/// Plain-arithmetic reference for the superluminal map.
fn superluminal_ref(v: f64, eta: f64, c: f64, t: f64, x: f64) -> (f64, f64) {
    let g = 1.0 / (v * v / (c * c) - 1.0).sqrt();
    (eta * g * (t - v * x / (c * c)), eta * g * (x - v * t))
}

#[test]
fn boost_of_unit_time_at_three_fifths() {
    let c = SpeedOfLight::NATURAL;
    let q = FrameMap::boost(0.6, c)
        .unwrap()
        .apply(&pt(1.0, 0.0))
        .unwrap();
    assert_relative_eq!(q.t(), 1.25, max_relative = 1e-15);
    assert_relative_eq!(q.x(), -0.75, max_relative = 1e-15);
}

#[test]
fn superluminal_at_twice_c_swaps_interval_sign() {
    let c = SpeedOfLight::NATURAL;
    let m = FrameMap::superluminal(2.0, Eta::Plus, c).unwrap();
    let q = m.apply(&pt(1.0, 0.0)).unwrap();
    assert_relative_eq!(q.t(), 1.0 / 3f64.sqrt(), max_relative = 1e-15);
    assert_relative_eq!(q.x(), -2.0 / 3f64.sqrt(), max_relative = 1e-15);
    let o = SpacetimePoint::origin(loopcheck_core::kinematics::Dimension::OnePlusOne);
    assert_eq!(
        classify_interval(&o, &pt(1.0, 0.0), c).unwrap().kind,
        IntervalKind::Timelike
    );
    assert_eq!(
        classify_interval(&o, &q, c).unwrap().kind,
        IntervalKind::Spacelike
    );
}

#[test]
fn speeds_at_light_speed_are_rejected_on_both_branches() {
    let c = SpeedOfLight::new(3.0).unwrap();
    assert!(FrameMap::boost(3.0, c).is_err());
    assert!(FrameMap::superluminal(-3.0, Eta::Minus, c).is_err());
    assert!(FrameMap::boost(3.5, c).is_err());
    assert!(FrameMap::superluminal(2.5, Eta::Plus, c).is_err());
}

proptest! {
    #[test]
    fn boost_matches_reference(v in -0.99f64..0.99, c in 0.5f64..3.0, t in -10f64..10.0, x in -10f64..10.0) {
        let sc = SpeedOfLight::new(c).unwrap();
        let q = FrameMap::boost(v * c, sc).unwrap().apply(&pt(t, x)).unwrap();
        let (rt, rx) = boost_ref(v * c, c, t, x);
        prop_assert!((q.t() - rt).abs() <= 1e-12 * (1.0 + rt.abs()));
        prop_assert!((q.x() - rx).abs() <= 1e-12 * (1.0 + rx.abs()));
    }

    #[test]
    fn superluminal_matches_reference(v in 1.001f64..100.0, plus in any::<bool>(), t in -10f64..10.0, x in -10f64..10.0) {
        let c = SpeedOfLight::NATURAL;
        let (eta, s) = if plus { (Eta::Plus, 1.0) } else { (Eta::Minus, -1.0) };
        let q = FrameMap::superluminal(v, eta, c).unwrap().apply(&pt(t, x)).unwrap();
        let (rt, rx) = superluminal_ref(v, s, 1.0, t, x);
        prop_assert!((q.t() - rt).abs() <= 1e-12 * (1.0 + rt.abs()));
        prop_assert!((q.x() - rx).abs() <= 1e-12 * (1.0 + rx.abs()));
    }

    #[test]
    fn superluminal_negates_interval(v in 1.001f64..100.0, neg in any::<bool>(),
                                     a in (-10f64..10.0, -10f64..10.0), b in (-10f64..10.0, -10f64..10.0)) {
        let c = SpeedOfLight::NATURAL;
        let v = if neg { -v } else { v };
        for eta in Eta::BOTH {
            let m = FrameMap::superluminal(v, eta, c).unwrap();
            let (p, q) = (pt(a.0, a.1), pt(b.0, b.1));
            let before = interval(&p, &q, c).unwrap();
            let after = interval(&m.apply(&p).unwrap(), &m.apply(&q).unwrap(), c).unwrap();
            let (dt, dx) = (b.0 - a.0, b.1 - a.1);
            prop_assert!((after + before).abs() <= 1e-12 * (dt * dt + dx * dx).max(1e-300));
        }
    }

    #[test]
    fn boost_then_inverse_is_identity(v in -0.99f64..0.99, t in -10f64..10.0, x in -10f64..10.0) {
        let c = SpeedOfLight::NATURAL;
        let m = compose(&FrameMap::boost(-v, c).unwrap(), &FrameMap::boost(v, c).unwrap()).unwrap();
        let q = m.apply(&pt(t, x)).unwrap();
        prop_assert!((q.t() - t).abs() <= 1e-12 * (1.0 + t.abs() + x.abs()) / (1.0 - v * v));
        prop_assert!((q.x() - x).abs() <= 1e-12 * (1.0 + t.abs() + x.abs()) / (1.0 - v * v));
    }

    #[test]
    fn scaled_boosts_are_conformal(v in -0.99f64..0.99, k in 0.1f64..10.0) {
        let m = FrameMap::boost(v, SpeedOfLight::NATURAL).unwrap().scaled(k).unwrap();
        match classify_cone_preserver(&m).unwrap() {
            ConePreserver::ConformalLorentz { lambda } => prop_assert!((lambda - k * k).abs() <= 1e-9 * k * k),
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn shears_are_not_cone_preserving(s in 0.05f64..3.0) {
        let m = FrameMap::general(
            nalgebra::DMatrix::from_row_slice(2, 2, &[1.0, 0.0, s, 1.0]),
            nalgebra::DVector::zeros(2),
            SpeedOfLight::NATURAL,
        ).unwrap();
        prop_assert_eq!(classify_cone_preserver(&m).unwrap(), ConePreserver::NotConePreserving);
    }
}
