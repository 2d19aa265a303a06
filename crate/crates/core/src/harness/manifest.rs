use std::path::PathBuf;

use serde::Serialize;

use super::PhaseGrid;
use crate::tolerance::{CONE_TOL, INTERVAL_REL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub interval_rel: f64,
    pub cone: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            interval_rel: INTERVAL_REL_TOL,
            cone: CONE_TOL,
        }
    }
}

/// Everything that determines a run's output. Identical manifests produce
/// byte-identical files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub trials: usize,
    pub tolerances: Tolerances,
    pub resolution: usize,
    #[serde(skip)]
    pub phis: PhaseGrid,
    pub suite: String,
}

impl RunManifest {
    pub const DEFAULT_SEED: u64 = 42;
    pub const DEFAULT_TRIALS: usize = 1000;
    pub const DEFAULT_RESOLUTION: usize = 101;

    pub fn new(command: impl Into<String>) -> Self {
        RunManifest {
            command: command.into(),
            config: None,
            out: None,
            seed: Self::DEFAULT_SEED,
            trials: Self::DEFAULT_TRIALS,
            tolerances: Tolerances::default(),
            resolution: Self::DEFAULT_RESOLUTION,
            phis: PhaseGrid::DEFAULT,
            suite: "all".into(),
        }
    }
}
