//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function returning
//! `Result<_, String>`, so the logic is testable off the browser.

use loopcheck_core::harness::{linspace, run_suite, CheckContext};
use loopcheck_core::interference::{
    phase_sweep, visibility, BlockedArm, DetectorModel, ExperimentConfig,
};
use loopcheck_core::kinematics::{
    classify_cone_preserver, interval, ConePreserver, Eta, FrameMap, SpacetimePoint, SpeedOfLight,
};
use wasm_bindgen::prelude::*;

/// One phase sweep, column by column.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Fringe {
    phis: Vec<f64>,
    p_d0: Vec<f64>,
    p_d1: Vec<f64>,
    p_absorbed: Vec<f64>,
    visibility: f64,
}

#[wasm_bindgen]
impl Fringe {
    #[wasm_bindgen(getter)]
    pub fn phis(&self) -> Vec<f64> {
        self.phis.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn p_d0(&self) -> Vec<f64> {
        self.p_d0.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn p_d1(&self) -> Vec<f64> {
        self.p_d1.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn p_absorbed(&self) -> Vec<f64> {
        self.p_absorbed.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn visibility(&self) -> f64 {
        self.visibility
    }
}

fn blocked_arm(name: &str) -> Result<BlockedArm, String> {
    match name {
        "none" => Ok(BlockedArm::None),
        "upper" => Ok(BlockedArm::Upper),
        "lower" => Ok(BlockedArm::Lower),
        _ => Err(format!("unknown arm `{name}`")),
    }
}

fn detector(name: &str) -> Result<DetectorModel, String> {
    DetectorModel::ALL
        .into_iter()
        .find(|d| d.name() == name)
        .ok_or_else(|| format!("unknown detector model `{name}`"))
}

/// Sweeps `steps` phases over `[0, 2pi]`. A `classical_weight` in `[0, 1]`
/// switches to a classical mixture with that weight on the upper path.
pub fn fringe_sweep(
    splitter1: f64,
    splitter2: f64,
    blocked: &str,
    detector_model: &str,
    classical_weight: Option<f64>,
    steps: usize,
) -> Result<Fringe, String> {
    let base = match classical_weight {
        Some(w) => ExperimentConfig::classical([w, 1.0 - w]),
        None => ExperimentConfig::default(),
    };
    let config = ExperimentConfig {
        splitter1,
        splitter2,
        blocked_arm: blocked_arm(blocked)?,
        detector_model: detector(detector_model)?,
        ..base
    };
    let phis = linspace(0.0, 2.0 * std::f64::consts::PI, steps.max(2));
    let rows = phase_sweep(&config, &phis).map_err(|e| e.to_string())?;
    Ok(Fringe {
        visibility: visibility(&rows),
        phis,
        p_d0: rows.iter().map(|r| r.distribution.p_d0).collect(),
        p_d1: rows.iter().map(|r| r.distribution.p_d1).collect(),
        p_absorbed: rows.iter().map(|r| r.distribution.p_absorbed).collect(),
    })
}

fn frame_map(branch: &str, velocity: f64, eta: i8) -> Result<FrameMap, String> {
    let c = SpeedOfLight::NATURAL;
    match branch {
        "subluminal" => FrameMap::boost(velocity, c),
        "superluminal" => FrameMap::superluminal(velocity, Eta::try_from(eta)?, c),
        _ => return Err(format!("unknown branch `{branch}`")),
    }
    .map_err(|e| e.to_string())
}

/// Maps events given as flat `[t0, x0, t1, x1, ...]` (with `c = 1`) and
/// returns flat `[t', x', interval, interval', ...]`, intervals measured
/// from the origin and from its image.
pub fn map_events(
    branch: &str,
    velocity: f64,
    eta: i8,
    events: &[f64],
) -> Result<Vec<f64>, String> {
    if !events.len().is_multiple_of(2) {
        return Err("events must come in (t, x) pairs".into());
    }
    let map = frame_map(branch, velocity, eta)?;
    let c = map.c();
    let err = |e: loopcheck_core::kinematics::KinematicsError| e.to_string();
    let origin = SpacetimePoint::new(0.0, 0.0).map_err(err)?;
    let origin_image = map.apply(&origin).map_err(err)?;
    let mut out = Vec::with_capacity(events.len() * 2);
    for pair in events.chunks_exact(2) {
        let p = SpacetimePoint::new(pair[0], pair[1]).map_err(err)?;
        let q = map.apply(&p).map_err(err)?;
        out.extend([
            q.t(),
            q.x(),
            interval(&origin, &p, c).map_err(err)?,
            interval(&origin_image, &q, c).map_err(err)?,
        ]);
    }
    Ok(out)
}

/// `conformal-lorentz`, `sign-flip` or `not-cone-preserving`.
pub fn map_class(branch: &str, velocity: f64, eta: i8) -> Result<String, String> {
    let map = frame_map(branch, velocity, eta)?;
    Ok(
        match classify_cone_preserver(&map).map_err(|e| e.to_string())? {
            ConePreserver::ConformalLorentz { .. } => "conformal-lorentz",
            ConePreserver::SignFlip { .. } => "sign-flip",
            ConePreserver::NotConePreserving => "not-cone-preserving",
        }
        .to_string(),
    )
}

/// Runs the check suite and returns the report as JSON.
pub fn check_report(selector: &str, seed: u64, trials: usize) -> Result<String, String> {
    let ctx = CheckContext {
        seed,
        trials,
        ..Default::default()
    };
    run_suite(selector, &ctx)
        .map(|r| r.to_json())
        .map_err(|e| e.to_string())
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen(js_name = fringeSweep)]
pub fn fringe_sweep_js(
    splitter1: f64,
    splitter2: f64,
    blocked: &str,
    detector_model: &str,
    classical_weight: Option<f64>,
    steps: usize,
) -> Result<Fringe, JsError> {
    fringe_sweep(
        splitter1,
        splitter2,
        blocked,
        detector_model,
        classical_weight,
        steps,
    )
    .map_err(js)
}

#[wasm_bindgen(js_name = mapEvents)]
pub fn map_events_js(
    branch: &str,
    velocity: f64,
    eta: i8,
    events: &[f64],
) -> Result<Vec<f64>, JsError> {
    map_events(branch, velocity, eta, events).map_err(js)
}

#[wasm_bindgen(js_name = mapClass)]
pub fn map_class_js(branch: &str, velocity: f64, eta: i8) -> Result<String, JsError> {
    map_class(branch, velocity, eta).map_err(js)
}

#[wasm_bindgen(js_name = checkReport)]
pub fn check_report_js(selector: &str, seed: u64, trials: usize) -> Result<String, JsError> {
    check_report(selector, seed, trials).map_err(js)
}
