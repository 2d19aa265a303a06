//! Randomized and exhaustive property checks, one function per invariant.
//!
//! Every check takes its random source explicitly, so a fixed seed gives a
//! fixed verdict and a fixed detail string.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use super::fmt_f64;
use crate::amplitudes::{
    carrier_minimality_check, check_additivity, check_global_phase_invariance, concat, evaluate,
    phase, registered_rules, sum_alternatives, AlternativeGraph, Amplitude, Outcome,
    ProbabilityRule, SquaredNorm,
};
use crate::interference::{
    check_o1_robustness, check_o3_frame_invariance, no_go_search, outcome_graphs, phase_sweep,
    simulate, visibility, BlockedArm, Composition, DetectorModel, ExperimentConfig,
};
use crate::kinematics::{
    check_no_branching, classify_cone_preserver, compose, in_causal_past, lorentz_boost,
    preserves_null_lines, ConePreserver, Eta, FrameMap, KinematicsError, SpacetimePoint,
    SpeedOfLight, Worldline,
};
use crate::tolerance::AMPLITUDE_TOL;

/// Builds the superluminal map; swapped out only to mutation-test the checks.
pub type SuperluminalBuilder = fn(f64, Eta, SpeedOfLight) -> Result<FrameMap, KinematicsError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            pass,
            detail: detail.into(),
        }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        CheckOutcome::new(false, format!("error: {e}"))
    }
}

// ---------------------------------------------------------------------------
// generators

pub fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.gen::<bool>() {
        1.0
    } else {
        -1.0
    }
}

pub fn random_event<R: Rng + ?Sized>(rng: &mut R) -> SpacetimePoint {
    SpacetimePoint::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))
        .expect("finite by construction")
}

pub fn random_eta<R: Rng + ?Sized>(rng: &mut R) -> Eta {
    if rng.gen::<bool>() {
        Eta::Plus
    } else {
        Eta::Minus
    }
}

/// `|V|` uniform in `(lo, hi) * c` with a random sign.
pub fn random_speed<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, c: SpeedOfLight) -> f64 {
    random_sign(rng) * rng.gen_range(lo..hi) * c.value()
}

/// A 1+3 Lorentz transformation: rotation, boost, rotation.
pub fn random_lorentz_3d<R: Rng + ?Sized>(rng: &mut R, c: SpeedOfLight) -> FrameMap {
    let mut rotation = || {
        let axis = crate::kinematics::random_unit_vector(rng);
        FrameMap::rotation_3d(axis, rng.gen_range(-PI..PI), c).expect("rotation is invertible")
    };
    let r1 = rotation();
    let r2 = rotation();
    let dir = crate::kinematics::random_unit_vector(rng);
    let speed = rng.gen_range(0.0..0.99) * c.value();
    let boost = FrameMap::boost_3d(dir.map(|d| d * speed), c).expect("subluminal");
    let inner = compose(&boost, &r1).expect("same dimension");
    compose(&r2, &inner).expect("same dimension")
}

/// An invertible 1+1 map with relative determinant at least 0.1 and a
/// random translation.
pub fn random_general_map<R: Rng + ?Sized>(rng: &mut R, c: SpeedOfLight) -> FrameMap {
    loop {
        let m = DMatrix::from_fn(2, 2, |_, _| rng.gen_range(-2.0..2.0));
        let b = DVector::from_fn(2, |_, _| rng.gen_range(-5.0..5.0));
        if let Ok(map) = FrameMap::general(m, b, c) {
            if map.relative_determinant().abs() >= 0.1 {
                return map;
            }
        }
    }
}

/// A random invertible 1+1 map from one of the three families.
pub fn random_invertible_map<R: Rng + ?Sized>(rng: &mut R, c: SpeedOfLight) -> FrameMap {
    let offset =
        SpacetimePoint::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)).expect("finite");
    match rng.gen_range(0..3) {
        0 => FrameMap::boost(random_speed(rng, 0.0, 0.99, c), c)
            .and_then(|m| m.with_translation(&offset))
            .expect("subluminal"),
        1 => FrameMap::superluminal(random_speed(rng, 1.01, 100.0, c), random_eta(rng), c)
            .and_then(|m| m.with_translation(&offset))
            .expect("superluminal"),
        _ => random_general_map(rng, c),
    }
}

/// A simple polyline with 2..=`max_vertices` vertices.
///
/// Two constructions, both simple by geometry rather than by test: graphs of
/// functions of `t` (any line of constant `t` meets them once) and star
/// polylines whose vertices have strictly increasing polar angle about a
/// centre with total turn below `2 pi` and every step below `pi`.
pub fn random_simple_polyline<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
) -> Vec<SpacetimePoint> {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let (ct, cx) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    if rng.gen::<bool>() {
        let mut t = ct;
        (0..n)
            .map(|_| {
                t += rng.gen_range(0.1..1.0);
                SpacetimePoint::new(t, cx + rng.gen_range(-3.0..3.0)).expect("finite")
            })
            .collect()
    } else {
        let steps = n - 1;
        let span_cap = if steps == 1 { 0.9 * PI } else { 1.9 * PI };
        let span = rng.gen_range(0.3..span_cap);
        let raw: Vec<f64> = (0..steps).map(|_| rng.gen_range(0.2..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let mut theta = rng.gen_range(-PI..PI);
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                theta += span * raw[k - 1] / total;
            }
            let r = rng.gen_range(0.2..5.0);
            out.push(
                SpacetimePoint::new(ct + r * theta.cos(), cx + r * theta.sin()).expect("finite"),
            );
        }
        out
    }
}

fn random_amplitude<R: Rng + ?Sized>(rng: &mut R) -> Amplitude {
    Amplitude::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

/// A random well-formed graph of bounded depth.
pub fn random_graph<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    all_distinguishable: bool,
) -> AlternativeGraph {
    if depth == 0 || rng.gen_range(0..3) == 0 {
        return AlternativeGraph::leaf(random_amplitude(rng).scale(0.5));
    }
    let k = rng.gen_range(2..4);
    let children = (0..k)
        .map(|_| random_graph(rng, depth - 1, all_distinguishable))
        .collect();
    if rng.gen::<bool>() {
        AlternativeGraph::Sequence(children)
    } else {
        AlternativeGraph::branch(children, all_distinguishable || rng.gen::<bool>())
    }
}

// ---------------------------------------------------------------------------
// kinematics

fn euclid(a: &SpacetimePoint, b: &SpacetimePoint, c: SpeedOfLight) -> f64 {
    let dt = c.value() * (b.t() - a.t());
    let dx = b.x() - a.x();
    dt * dt + dx * dx
}

fn interval_1p1(a: &SpacetimePoint, b: &SpacetimePoint, c: SpeedOfLight) -> f64 {
    let dt = c.value() * (b.t() - a.t());
    let dx = b.x() - a.x();
    dx * dx - dt * dt
}

/// Largest `|I' - sign * I|` over `trials` random event pairs, relative to
/// the Euclidean size of the larger of the two separations.
fn max_interval_error<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
    sign: f64,
    mut map_for: impl FnMut(&mut R) -> Result<Vec<FrameMap>, KinematicsError>,
) -> Result<f64, KinematicsError> {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let (a, b) = (random_event(rng), random_event(rng));
        for m in map_for(rng)? {
            let (ia, ib) = (m.apply(&a)?, m.apply(&b)?);
            let before = interval_1p1(&a, &b, c);
            let after = interval_1p1(&ia, &ib, c);
            let scale = euclid(&a, &b, c).max(euclid(&ia, &ib, c));
            worst = worst.max((after - sign * before).abs() / scale);
        }
    }
    Ok(worst)
}

/// The superluminal branch negates the interval of every event pair, for
/// `|V|` in `(1.001c, 100c)` and both signs of eta.
pub fn interval_flip<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
    tol: f64,
    superluminal: SuperluminalBuilder,
) -> CheckOutcome {
    let result = max_interval_error(rng, trials, c, -1.0, |rng| {
        let v = random_speed(rng, 1.001, 100.0, c);
        Eta::BOTH
            .iter()
            .map(|&eta| superluminal(v, eta, c))
            .collect()
    });
    match result {
        Ok(err) => CheckOutcome::new(
            err <= tol,
            format!(
                "{trials} event pairs x 2 signs, max relative error {} (tol {})",
                fmt_f64(err),
                fmt_f64(tol)
            ),
        ),
        Err(e) => CheckOutcome::error(e),
    }
}

/// Subluminal boosts with `|V|` in `(0, 0.999c)` preserve the interval.
pub fn interval_preservation<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
    tol: f64,
) -> CheckOutcome {
    let result = max_interval_error(rng, trials, c, 1.0, |rng| {
        Ok(vec![FrameMap::boost(random_speed(rng, 0.0, 0.999, c), c)?])
    });
    match result {
        Ok(err) => CheckOutcome::new(
            err <= tol,
            format!(
                "{trials} event pairs, max relative error {} (tol {})",
                fmt_f64(err),
                fmt_f64(tol)
            ),
        ),
        Err(e) => CheckOutcome::error(e),
    }
}

/// Composing two boosts acts like one boost with the added velocity.
pub fn velocity_addition<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
    tol: f64,
) -> CheckOutcome {
    let cv = c.value();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let (v1, v2) = (
            random_speed(rng, 0.0, 0.99, c),
            random_speed(rng, 0.0, 0.99, c),
        );
        let p = random_event(rng);
        let run = || -> Result<f64, KinematicsError> {
            let composed = compose(&FrameMap::boost(v1, c)?, &FrameMap::boost(v2, c)?)?;
            let direct = FrameMap::boost((v1 + v2) / (1.0 + v1 * v2 / (cv * cv)), c)?;
            let (a, b) = (composed.apply(&p)?, direct.apply(&p)?);
            let scale = (a.t() * cv).hypot(a.x()).max((p.t() * cv).hypot(p.x()));
            Ok(((a.t() - b.t()) * cv).hypot(a.x() - b.x()) / scale)
        };
        match run() {
            Ok(e) => worst = worst.max(e),
            Err(e) => return CheckOutcome::error(e),
        }
    }
    CheckOutcome::new(
        worst <= tol,
        format!(
            "{trials} velocity pairs, max relative deviation {}",
            fmt_f64(worst)
        ),
    )
}

/// Applying the same superluminal map twice preserves the interval.
pub fn double_flip<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
    tol: f64,
    superluminal: SuperluminalBuilder,
) -> CheckOutcome {
    let mut classified = 0;
    let result = max_interval_error(rng, trials, c, 1.0, |rng| {
        let m = superluminal(random_speed(rng, 1.01, 100.0, c), random_eta(rng), c)?;
        let twice = compose(&m, &m)?;
        if matches!(
            classify_cone_preserver(&twice)?,
            ConePreserver::ConformalLorentz { .. }
        ) {
            classified += 1;
        }
        Ok(vec![twice])
    });
    match result {
        Ok(err) => CheckOutcome::new(
            err <= tol && classified == trials,
            format!(
                "{trials} squared maps, {classified} conformal-lorentz, max relative error {}",
                fmt_f64(err)
            ),
        ),
        Err(e) => CheckOutcome::error(e),
    }
}

/// Exact classification agrees with the sampled null-line test on boosts,
/// superluminal maps and random general maps in 1+1.
pub fn cone_agreement_1p1<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
) -> CheckOutcome {
    let mut mismatches = 0;
    let mut wrong_class = 0;
    for k in 0..trials {
        let (m, expect) = match k % 3 {
            0 => (
                FrameMap::boost(random_speed(rng, 0.0, 0.99, c), c),
                Some(true),
            ),
            1 => (
                FrameMap::superluminal(random_speed(rng, 1.01, 100.0, c), random_eta(rng), c),
                Some(false),
            ),
            _ => (Ok(random_general_map(rng, c)), None),
        };
        let m = match m {
            Ok(m) => m,
            Err(e) => return CheckOutcome::error(e),
        };
        let class = match classify_cone_preserver(&m) {
            Ok(class) => class,
            Err(e) => return CheckOutcome::error(e),
        };
        if class.preserves_cone() != preserves_null_lines(&m, 8, rng) {
            mismatches += 1;
        }
        let ok = match (expect, class) {
            (Some(true), ConePreserver::ConformalLorentz { lambda }) => (lambda - 1.0).abs() < 1e-9,
            (Some(false), ConePreserver::SignFlip { lambda }) => (lambda - 1.0).abs() < 1e-9,
            (None, _) => true,
            _ => false,
        };
        if !ok {
            wrong_class += 1;
        }
    }
    CheckOutcome::new(
        mismatches == 0 && wrong_class == 0,
        format!(
            "{trials} maps, {mismatches} exact/sampled disagreements, {wrong_class} misclassified"
        ),
    )
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ConeTally {
    pub conformal_ok: usize,
    pub conformal_total: usize,
    pub sign_flip_ok: usize,
    pub sign_flip_total: usize,
    pub perturbed_ok: usize,
    pub perturbed_total: usize,
    /// 1+3 inputs that ever came back as sign-flip.
    pub sign_flip_in_1p3: usize,
}

impl ConeTally {
    pub fn misclassified(&self) -> usize {
        (self.conformal_total - self.conformal_ok)
            + (self.sign_flip_total - self.sign_flip_ok)
            + (self.perturbed_total - self.perturbed_ok)
    }
}

/// Scaled 1+3 Lorentz maps must be conformal-lorentz with factor `lambda^2`;
/// 1+1 superluminal maps must be sign-flips; perturbed 1+3 Lorentz maps
/// must be rejected.
pub fn cone_classification<R: Rng + ?Sized>(
    rng: &mut R,
    conformal: usize,
    superluminal: usize,
    perturbed: usize,
    c: SpeedOfLight,
    cone_tol: f64,
) -> Result<ConeTally, KinematicsError> {
    let mut tally = ConeTally {
        conformal_total: conformal,
        sign_flip_total: superluminal * 2,
        perturbed_total: perturbed,
        ..Default::default()
    };
    for _ in 0..conformal {
        let lambda = rng.gen_range(0.1..10.0);
        let m = random_lorentz_3d(rng, c).scaled(lambda)?;
        match classify_cone_preserver(&m)? {
            ConePreserver::ConformalLorentz { lambda: f } => {
                if (f - lambda * lambda).abs() <= cone_tol * lambda * lambda {
                    tally.conformal_ok += 1;
                }
            }
            ConePreserver::SignFlip { .. } => tally.sign_flip_in_1p3 += 1,
            ConePreserver::NotConePreserving => {}
        }
    }
    for _ in 0..superluminal {
        let v = random_speed(rng, 1.001, 100.0, c);
        for eta in Eta::BOTH {
            let m = FrameMap::superluminal(v, eta, c)?;
            if let ConePreserver::SignFlip { lambda } = classify_cone_preserver(&m)? {
                if (lambda - 1.0).abs() <= cone_tol {
                    tally.sign_flip_ok += 1;
                }
            }
        }
    }
    for k in 0..perturbed {
        let base = random_lorentz_3d(rng, c);
        let linear = if k % 2 == 0 {
            // generic additive perturbation
            let size = rng.gen_range(0.01..0.5) * base.linear().norm();
            let noise = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
            base.linear() + noise * (size / 4.0)
        } else {
            // anisotropic rescaling of space
            let d = DVector::from_vec(vec![
                1.0,
                rng.gen_range(1.1..3.0),
                rng.gen_range(0.3..0.9),
                1.0,
            ]);
            DMatrix::from_diagonal(&d) * base.linear()
        };
        let m = FrameMap::general(linear, DVector::zeros(4), c)?;
        match classify_cone_preserver(&m)? {
            ConePreserver::NotConePreserving => {
                if !preserves_null_lines(&m, 8, rng) {
                    tally.perturbed_ok += 1;
                }
            }
            ConePreserver::SignFlip { .. } => tally.sign_flip_in_1p3 += 1,
            ConePreserver::ConformalLorentz { .. } => {}
        }
    }
    Ok(tally)
}

pub fn cone_classification_check<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
    cone_tol: f64,
) -> CheckOutcome {
    let side = (trials / 10).max(1);
    match cone_classification(rng, trials, side, side, c, cone_tol) {
        Ok(t) => CheckOutcome::new(
            t.misclassified() == 0 && t.sign_flip_in_1p3 == 0,
            format!(
                "conformal {}/{}, sign-flip {}/{}, perturbed {}/{}, 1+3 sign-flips {}",
                t.conformal_ok,
                t.conformal_total,
                t.sign_flip_ok,
                t.sign_flip_total,
                t.perturbed_ok,
                t.perturbed_total,
                t.sign_flip_in_1p3
            ),
        ),
        Err(e) => CheckOutcome::error(e),
    }
}

/// Membership in the causal past is unchanged by a common boost.
pub fn causal_past_invariance<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
) -> CheckOutcome {
    let mut changed = 0;
    let mut members = 0;
    for k in 0..trials {
        let e = random_event(rng);
        let candidate = if k % 4 == 0 {
            // exactly on the past light cone
            let s = rng.gen_range(0.0..5.0);
            SpacetimePoint::new(e.t() - s, e.x() + random_sign(rng) * c.value() * s)
                .expect("finite")
        } else {
            random_event(rng)
        };
        let v = random_speed(rng, 0.0, 0.99, c);
        let run = || -> Result<(bool, bool), KinematicsError> {
            let before = in_causal_past(&e, &candidate, c)?;
            let after = in_causal_past(
                &lorentz_boost(&e, v, c)?,
                &lorentz_boost(&candidate, v, c)?,
                c,
            )?;
            Ok((before, after))
        };
        match run() {
            Ok((before, after)) => {
                members += before as usize;
                changed += (before != after) as usize;
            }
            Err(e) => return CheckOutcome::error(e),
        }
    }
    CheckOutcome::new(
        changed == 0,
        format!("{trials} pairs ({members} in the past cone), {changed} changed under boosts"),
    )
}

/// The crossing bow-tie used to show the branching detector is live.
pub fn self_intersecting_fixture() -> Worldline {
    let v = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]
        .iter()
        .map(|&(t, x)| SpacetimePoint::new(t, x).expect("finite"))
        .collect();
    Worldline::new_unchecked(v, vec![0.0, 1.0, 2.0, 3.0])
}

/// Random simple polylines stay simple under random invertible maps, and
/// the self-intersecting fixture is caught.
pub fn no_branching<R: Rng + ?Sized>(rng: &mut R, trials: usize, c: SpeedOfLight) -> CheckOutcome {
    let mut failures = 0;
    for _ in 0..trials {
        let w = match Worldline::with_index_labels(random_simple_polyline(rng, 20)) {
            Ok(w) => w,
            Err(e) => return CheckOutcome::error(format!("generator produced {e}")),
        };
        let m = random_invertible_map(rng, c);
        match check_no_branching(&w, &m) {
            Ok(true) => {}
            Ok(false) => failures += 1,
            Err(e) => return CheckOutcome::error(e),
        }
    }
    let identity = FrameMap::identity(crate::kinematics::Dimension::OnePlusOne, c);
    let fixture_caught =
        !check_no_branching(&self_intersecting_fixture(), &identity).unwrap_or(true);
    CheckOutcome::new(
        failures == 0 && fixture_caught,
        format!(
            "{trials} polylines, {failures} lost simplicity; crossing fixture {}",
            if fixture_caught {
                "rejected"
            } else {
                "NOT rejected"
            }
        ),
    )
}

// ---------------------------------------------------------------------------
// amplitudes

fn amp_close(a: Amplitude, b: Amplitude) -> bool {
    (a.re - b.re).abs() <= AMPLITUDE_TOL && (a.im - b.im).abs() <= AMPLITUDE_TOL
}

/// Sum over indistinguishable alternatives: commutative, associative, zero
/// is neutral, and an unrecorded branch weighs `P(a + b)`.
pub fn sum_rule<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> CheckOutcome {
    let mut bad = 0;
    for _ in 0..trials {
        let (a, b, d) = (
            random_amplitude(rng),
            random_amplitude(rng),
            random_amplitude(rng),
        );
        let ok = amp_close(sum_alternatives(a, b), sum_alternatives(b, a))
            && amp_close(
                sum_alternatives(sum_alternatives(a, b), d),
                sum_alternatives(a, sum_alternatives(b, d)),
            )
            && sum_alternatives(a, Amplitude::ZERO) == a;
        let g = AlternativeGraph::branch(
            vec![AlternativeGraph::leaf(a), AlternativeGraph::leaf(b)],
            false,
        );
        let w = g.weight(&SquaredNorm).unwrap_or(f64::NAN);
        if !(ok && (w - (a + b).norm_sqr()).abs() <= AMPLITUDE_TOL * w.max(1.0)) {
            bad += 1;
        }
    }
    CheckOutcome::new(
        bad == 0,
        format!("{trials} random triples, {bad} violations"),
    )
}

/// Concatenation: associative, unit-neutral, and distributive over the sum.
pub fn product_rule<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let (a, b, d) = (
            random_amplitude(rng),
            random_amplitude(rng),
            random_amplitude(rng),
        );
        let diffs = [
            concat(concat(a, b), d) + -concat(a, concat(b, d)),
            concat(d, sum_alternatives(a, b)) + -sum_alternatives(concat(d, a), concat(d, b)),
            concat(a, Amplitude::ONE) + -a,
        ];
        for diff in diffs {
            worst = worst.max(diff.re.abs()).max(diff.im.abs());
        }
    }
    CheckOutcome::new(
        worst <= AMPLITUDE_TOL,
        format!("{trials} random triples, max deviation {}", fmt_f64(worst)),
    )
}

/// Two unrecorded unit paths at relative phase pi cancel, which no classical
/// mixture of their per-path weights can do.
pub fn interference_witness() -> CheckOutcome {
    let graph = AlternativeGraph::branch(
        vec![
            AlternativeGraph::leaf(Amplitude::ONE),
            AlternativeGraph::leaf(phase(PI)),
        ],
        false,
    );
    let coherent = match graph.weight(&SquaredNorm) {
        Ok(w) => w,
        Err(e) => return CheckOutcome::error(e),
    };
    let per_path = [
        SquaredNorm.weight(Amplitude::ONE),
        SquaredNorm.weight(phase(PI)),
    ];
    let closest_mixture = (0..=100)
        .map(|i| {
            let w = i as f64 / 100.0;
            (w * per_path[0] + (1.0 - w) * per_path[1] - coherent).abs()
        })
        .fold(f64::INFINITY, f64::min);
    CheckOutcome::new(
        coherent <= AMPLITUDE_TOL && closest_mixture >= 1.0 - AMPLITUDE_TOL,
        format!(
            "coherent weight {}, nearest classical mixture differs by {}",
            fmt_f64(coherent),
            fmt_f64(closest_mixture)
        ),
    )
}

/// Phase group law, norm preservation, global-phase invariance of every
/// registered rule, and the carrier-minimality report.
pub fn phase_symmetry<R: Rng + ?Sized>(rng: &mut R, trials: usize, grid: &[f64]) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let (x, y) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let a = random_amplitude(rng);
        let d = concat(phase(x), phase(y)) + -phase(x + y);
        worst = worst
            .max(d.re.abs())
            .max(d.im.abs())
            .max(((phase(x) * a).norm() - a.norm()).abs());
    }
    let identity = phase(0.0) == Amplitude::ONE;
    let invariant = registered_rules()
        .iter()
        .all(|r| check_global_phase_invariance(r.as_ref(), trials, rng));
    let carrier = match carrier_minimality_check(grid) {
        Ok(report) => report,
        Err(e) => return CheckOutcome::error(e),
    };
    let minimal = carrier.witnesses_minimality();
    CheckOutcome::new(
        worst <= AMPLITUDE_TOL && identity && invariant && minimal,
        format!(
            "group-law deviation {}, rules phase-invariant: {invariant}, \
             1D actions with both properties: {}, plane has both: {}",
            fmt_f64(worst),
            carrier
                .rows_1d
                .iter()
                .filter(|r| r.phase_invariant && r.relative_phase_matters)
                .count(),
            carrier.plane_phase_invariant && carrier.plane_relative_phase_matters
        ),
    )
}

/// Additivity over recorded alternatives, normalization of evaluated
/// outcomes, and phase blindness of fully recorded graphs.
pub fn probability_rule_axioms<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> CheckOutcome {
    let additive = registered_rules()
        .iter()
        .all(|r| check_additivity(r.as_ref(), trials, rng));
    let mut worst_norm: f64 = 0.0;
    let mut worst_blind: f64 = 0.0;
    let mut degenerate = 0;
    for _ in 0..trials {
        let outcomes: Vec<Outcome> = (0..rng.gen_range(1..4))
            .map(|k| Outcome::new(format!("o{k}"), random_graph(rng, 3, false)))
            .collect();
        match evaluate(&outcomes, &SquaredNorm) {
            Ok(e) => worst_norm = worst_norm.max((e.normalized.iter().sum::<f64>() - 1.0).abs()),
            Err(_) => degenerate += 1,
        }
        let recorded = random_graph(rng, 3, true);
        let phi = rng.gen_range(-PI..PI);
        let rotated = rotate_one_leaf(&recorded, phase(phi), &mut 0, rng.gen_range(0..8));
        let (w0, w1) = (
            recorded.weight(&SquaredNorm).unwrap_or(f64::NAN),
            rotated.weight(&SquaredNorm).unwrap_or(f64::NAN),
        );
        worst_blind = worst_blind.max((w0 - w1).abs() / w0.max(1.0));
    }
    CheckOutcome::new(
        additive && worst_norm <= AMPLITUDE_TOL && worst_blind <= AMPLITUDE_TOL,
        format!(
            "additive: {additive}, max normalization error {} ({degenerate} degenerate), \
             max phase sensitivity of recorded graphs {}",
            fmt_f64(worst_norm),
            fmt_f64(worst_blind)
        ),
    )
}

/// Multiplies the `target`-th leaf (in traversal order, wrapping) by `u`.
fn rotate_one_leaf(
    g: &AlternativeGraph,
    u: Amplitude,
    seen: &mut usize,
    target: usize,
) -> AlternativeGraph {
    fn count(g: &AlternativeGraph) -> usize {
        match g {
            AlternativeGraph::Leaf(_) => 1,
            AlternativeGraph::Sequence(c) => c.iter().map(count).sum(),
            AlternativeGraph::Branch { children, .. } => children.iter().map(count).sum(),
        }
    }
    fn walk(
        g: &AlternativeGraph,
        u: Amplitude,
        seen: &mut usize,
        target: usize,
    ) -> AlternativeGraph {
        match g {
            AlternativeGraph::Leaf(a) => {
                let out = if *seen == target { u * *a } else { *a };
                *seen += 1;
                AlternativeGraph::Leaf(out)
            }
            AlternativeGraph::Sequence(c) => {
                AlternativeGraph::Sequence(c.iter().map(|x| walk(x, u, seen, target)).collect())
            }
            AlternativeGraph::Branch {
                children,
                distinguishable,
            } => AlternativeGraph::Branch {
                children: children.iter().map(|x| walk(x, u, seen, target)).collect(),
                distinguishable: *distinguishable,
            },
        }
    }
    let target = target % count(g);
    walk(g, u, seen, target)
}

// ---------------------------------------------------------------------------
// interference

pub fn detector_neutrality(phis: &[f64]) -> CheckOutcome {
    match check_o1_robustness(phis) {
        Ok(report) => CheckOutcome::new(
            report.pass(),
            report
                .rows
                .iter()
                .map(|r| format!("{}={}", r.model.name(), fmt_f64(r.visibility)))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        Err(e) => CheckOutcome::error(e),
    }
}

pub fn no_go(phis: &[f64], resolution: usize) -> CheckOutcome {
    match no_go_search(phis, resolution) {
        Ok(r) => CheckOutcome::new(
            r.classical_is_phase_blind() && r.amplitude_visibility >= 1.0 - 1e-12,
            format!(
                "{} classical configs x {} phases: max variation {}; amplitude visibility {}",
                r.configs_checked,
                r.phases,
                fmt_f64(r.max_classical_variation),
                fmt_f64(r.amplitude_visibility)
            ),
        ),
        Err(e) => CheckOutcome::error(e),
    }
}

/// Balanced, unblocked, unrecorded fringe on a dense grid: complementary
/// ports, a zero, Lipschitz continuity and global-phase blindness of the
/// visibility.
pub fn loop_completeness(dense_points: usize) -> CheckOutcome {
    let n = dense_points.max(3) | 1; // odd, so pi is a grid point
    let phis: Vec<f64> = (0..n)
        .map(|k| 2.0 * PI * k as f64 / (n - 1) as f64)
        .collect();
    let config = ExperimentConfig::default();
    let run = || -> Result<CheckOutcome, crate::interference::InterferenceError> {
        let sweep = phase_sweep(&config, &phis)?;
        let shifted = phase_sweep(&config, &phis.iter().map(|p| p + PI).collect::<Vec<_>>())?;
        let complement = sweep
            .iter()
            .zip(&shifted)
            .map(|(a, b)| (a.distribution.p_d0 + b.distribution.p_d0 - 1.0).abs())
            .fold(0.0, f64::max);
        let minimum = sweep
            .iter()
            .map(|r| r.distribution.p_d0)
            .fold(f64::INFINITY, f64::min);
        let step = phis[1] - phis[0];
        let lipschitz_excess = sweep
            .windows(2)
            .map(|w| (w[1].distribution.p_d0 - w[0].distribution.p_d0).abs() - 0.5 * step)
            .fold(f64::NEG_INFINITY, f64::max);
        let v = visibility(&sweep);
        let v_global = global_phase_visibility(&config, &phis, 1.234)?;
        Ok(CheckOutcome::new(
            complement <= 1e-12
                && minimum <= 1e-12
                && lipschitz_excess <= 1e-12
                && (v - v_global).abs() <= 1e-12,
            format!(
                "{n} phases: complement error {}, min p_d0 {}, Lipschitz excess {}, \
                 visibility {} vs {} with global phase",
                fmt_f64(complement),
                fmt_f64(minimum),
                fmt_f64(lipschitz_excess),
                fmt_f64(v),
                fmt_f64(v_global)
            ),
        ))
    };
    run().unwrap_or_else(CheckOutcome::error)
}

/// Visibility with an extra common phase `theta` on both arms.
fn global_phase_visibility(
    config: &ExperimentConfig,
    phis: &[f64],
    theta: f64,
) -> Result<f64, crate::interference::InterferenceError> {
    let p: Vec<f64> = phis
        .iter()
        .map(|&phi| {
            let outcomes: Vec<Outcome> = outcome_graphs(&config.with_phase(phi))
                .into_iter()
                .map(|o| {
                    Outcome::new(
                        o.label,
                        AlternativeGraph::Sequence(vec![
                            AlternativeGraph::leaf(phase(theta)),
                            o.graph,
                        ]),
                    )
                })
                .collect();
            Ok(evaluate(&outcomes, &SquaredNorm)?.normalized[0])
        })
        .collect::<Result<_, crate::interference::InterferenceError>>()?;
    let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(if hi + lo == 0.0 {
        0.0
    } else {
        (hi - lo) / (hi + lo)
    })
}

/// Blocking either arm of the balanced interferometer gives
/// `(1/4, 1/4, 1/2)` with conditionals `1/2` at every phase.
pub fn blocked_arm(phis: &[f64]) -> CheckOutcome {
    let mut exact = 0;
    let mut worst: f64 = 0.0;
    let mut total = 0;
    for blocked_arm in [BlockedArm::Upper, BlockedArm::Lower] {
        let config = ExperimentConfig {
            blocked_arm,
            ..Default::default()
        };
        for &phi in phis {
            let d = match simulate(&config.with_phase(phi)) {
                Ok(d) => d,
                Err(e) => return CheckOutcome::error(e),
            };
            let expected = [0.25, 0.25, 0.5, 0.5, 0.5];
            let got = d.as_array();
            total += 1;
            if got == expected {
                exact += 1;
            }
            for (g, e) in got.iter().zip(expected) {
                worst = worst.max((g - e).abs());
            }
        }
    }
    CheckOutcome::new(
        worst <= 1e-15,
        format!(
            "{total} runs, {exact} bit-exact, max deviation {}",
            fmt_f64(worst)
        ),
    )
}

/// Random valid configurations: outputs lie in `[0, 1]` and sum to 1;
/// conditionals are consistent; classical runs are phase-blind.
pub fn normalization<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    let mut bad = 0;
    for _ in 0..trials {
        let composition = if rng.gen::<bool>() {
            Composition::Amplitude
        } else {
            Composition::ClassicalMixture
        };
        let w = rng.gen_range(0.0..=1.0);
        let config = ExperimentConfig {
            splitter1: rng.gen_range(0.0..=1.0),
            splitter2: rng.gen_range(0.0..=1.0),
            phase: rng.gen_range(-10.0..10.0),
            blocked_arm: BlockedArm::ALL[rng.gen_range(0..3)],
            detector_model: DetectorModel::ALL[rng.gen_range(0..4)],
            composition,
            mixture_weights: (composition == Composition::ClassicalMixture).then_some([w, 1.0 - w]),
        };
        match simulate(&config) {
            Ok(d) => {
                worst = worst.max((d.p_d0 + d.p_d1 + d.p_absorbed - 1.0).abs());
                let in_range = [d.p_d0, d.p_d1, d.p_absorbed]
                    .iter()
                    .all(|p| (0.0..=1.0).contains(p));
                let detected = d.p_d0 + d.p_d1;
                let conditionals_ok = match d.p_d0_given_detected {
                    Some(c0) => detected > 0.0 && (c0 - d.p_d0 / detected).abs() <= 1e-15,
                    None => detected == 0.0,
                };
                let blind = composition == Composition::Amplitude
                    || simulate(&config.with_phase(config.phase + 1.0))
                        .map(|o| o.bit_identical(&d))
                        .unwrap_or(false);
                if !(in_range && conditionals_ok && blind) {
                    bad += 1;
                }
            }
            Err(_) => bad += 1,
        }
    }
    CheckOutcome::new(
        worst <= 1e-12 && bad == 0,
        format!(
            "{trials} random configs, max |sum - 1| {}, {bad} violations",
            fmt_f64(worst)
        ),
    )
}

pub fn frame_invariance<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    c: SpeedOfLight,
) -> CheckOutcome {
    let mut boosts = vec![0.0, 0.6 * c.value()];
    boosts.extend((0..trials.min(100)).map(|_| random_speed(rng, 0.0, 0.99, c)));
    let configs = [
        ExperimentConfig::default(),
        ExperimentConfig {
            blocked_arm: BlockedArm::Upper,
            phase: 0.7,
            ..Default::default()
        },
        ExperimentConfig::classical([0.3, 0.7]),
    ];
    let mut rows = 0;
    for config in &configs {
        match check_o3_frame_invariance(config, &boosts, c) {
            Ok(r) if r.pass() => rows += r.rows.len(),
            Ok(r) => {
                return CheckOutcome::new(
                    false,
                    format!(
                        "frame-dependent result: {:?}",
                        r.rows
                            .iter()
                            .find(|x| !(x.classes_unchanged && x.statistics_identical))
                    ),
                )
            }
            Err(e) => return CheckOutcome::error(e),
        }
    }
    CheckOutcome::new(
        true,
        format!("{rows} (config, boost) pairs: interval classes and statistics unchanged"),
    )
}
