use loopcheck_core::amplitudes::{
    carrier_minimality_check, concat, evaluate, phase, sum_alternatives, AlternativeGraph,
    Amplitude, Outcome, SquaredNorm, EXPONENT_GRID,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn z(a: Amplitude) -> Complex64 {
    Complex64::new(a.re, a.im)
}

fn amp() -> impl Strategy<Value = Amplitude> {
    (-3f64..3.0, -3f64..3.0).prop_map(|(re, im)| Amplitude::new(re, im))
}

fn close(a: Amplitude, b: Complex64) -> bool {
    (a.re - b.re).abs() <= 1e-12 && (a.im - b.im).abs() <= 1e-12
}

#[test]
fn carrier_report_rules_out_real_scalars() {
    let report = carrier_minimality_check(&EXPONENT_GRID).unwrap();
    assert!(report.witnesses_minimality());
    assert!(report
        .rows_1d
        .iter()
        .all(|r| !(r.phase_invariant && r.relative_phase_matters)));
    assert!(report.plane_phase_invariant && report.plane_relative_phase_matters);
}

#[test]
fn opposite_phases_cancel() {
    let g = AlternativeGraph::branch(
        vec![
            AlternativeGraph::leaf(Amplitude::ONE),
            AlternativeGraph::leaf(phase(std::f64::consts::PI)),
        ],
        false,
    );
    assert!(g.weight(&SquaredNorm).unwrap() < 1e-30);
}

proptest! {
    #[test]
    fn arithmetic_matches_num_complex(a in amp(), b in amp()) {
        prop_assert!(close(sum_alternatives(a, b), z(a) + z(b)));
        prop_assert!(close(concat(a, b), z(a) * z(b)));
    }

    #[test]
    fn phase_matches_polar_form(x in -20f64..20.0) {
        prop_assert!(close(phase(x), Complex64::from_polar(1.0, x)));
    }

    #[test]
    fn unrecorded_branch_weighs_norm_of_sum(a in amp(), b in amp(), c in amp()) {
        let g = AlternativeGraph::branch(
            vec![AlternativeGraph::sequence([a, c]), AlternativeGraph::sequence([b, c])],
            false,
        );
        let want = (z(a) * z(c) + z(b) * z(c)).norm_sqr();
        prop_assert!((g.weight(&SquaredNorm).unwrap() - want).abs() <= 1e-12 * want.max(1.0));
    }

    #[test]
    fn recorded_branch_weighs_sum_of_norms(a in amp(), b in amp()) {
        let g = AlternativeGraph::branch(vec![AlternativeGraph::leaf(a), AlternativeGraph::leaf(b)], true);
        let want = z(a).norm_sqr() + z(b).norm_sqr();
        prop_assert!((g.weight(&SquaredNorm).unwrap() - want).abs() <= 1e-12 * want.max(1.0));
    }

    #[test]
    fn evaluation_normalizes(a in amp(), b in amp(), c in amp()) {
        prop_assume!(z(a).norm_sqr() + z(b).norm_sqr() + z(c).norm_sqr() > 1e-6);
        let outcomes = [a, b, c].map(|x| Outcome::new("o", AlternativeGraph::leaf(x)));
        let e = evaluate(&outcomes, &SquaredNorm).unwrap();
        prop_assert!((e.normalized.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
