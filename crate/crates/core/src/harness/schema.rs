use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::interference::ExperimentConfig;
use crate::kinematics::{Branch, Dimension, Eta, FrameMap, KinematicsError, SpeedOfLight};

pub const SCHEMA_VERSION: u64 = 1;

fn check_schema(found: u64) -> Result<(), HarnessError> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(HarnessError::Schema {
            found,
            expected: SCHEMA_VERSION,
        })
    }
}

/// JSON form of a [`FrameMap`].
///
/// Boost branches are described by `velocity` (and `eta` for the
/// superluminal branch, which is never defaulted); general-linear maps by
/// their `linear` rows. `translation` and `c` are optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub schema: u64,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Eta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<f64>>,
    #[serde(default)]
    pub c: SpeedOfLight,
}

impl MapSpec {
    pub fn identity() -> Self {
        MapSpec {
            schema: SCHEMA_VERSION,
            branch: Branch::GeneralLinear,
            velocity: None,
            eta: None,
            linear: Some(vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
            translation: None,
            c: SpeedOfLight::NATURAL,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let spec: MapSpec = serde_json::from_str(text)?;
        check_schema(spec.schema)?;
        Ok(spec)
    }

    pub fn to_frame_map(&self) -> Result<FrameMap, HarnessError> {
        check_schema(self.schema)?;
        let missing = |what: &str| {
            HarnessError::Json(format!(
                "branch `{:?}` requires field `{what}`",
                self.branch
            ))
        };
        let map = match self.branch {
            Branch::Subluminal => {
                if self.linear.is_some() || self.eta.is_some() {
                    return Err(HarnessError::Json(
                        "subluminal maps take only `velocity`".into(),
                    ));
                }
                FrameMap::boost(self.velocity.ok_or_else(|| missing("velocity"))?, self.c)?
            }
            Branch::Superluminal => {
                if self.linear.is_some() {
                    return Err(HarnessError::Json(
                        "superluminal maps take `velocity` and `eta`, not `linear`".into(),
                    ));
                }
                FrameMap::superluminal(
                    self.velocity.ok_or_else(|| missing("velocity"))?,
                    self.eta.ok_or_else(|| missing("eta"))?,
                    self.c,
                )?
            }
            Branch::GeneralLinear => {
                if self.velocity.is_some() || self.eta.is_some() {
                    return Err(HarnessError::Json(
                        "general-linear maps take `linear`, not `velocity`/`eta`".into(),
                    ));
                }
                let rows = self.linear.as_ref().ok_or_else(|| missing("linear"))?;
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(HarnessError::Kinematics(KinematicsError::BadMatrixShape {
                        expected: n,
                        rows: n,
                        cols: rows.first().map_or(0, Vec::len),
                    }));
                }
                let flat: Vec<f64> = rows.iter().flatten().copied().collect();
                FrameMap::general(
                    DMatrix::from_row_slice(n, n, &flat),
                    DVector::zeros(n),
                    self.c,
                )?
            }
        };
        match &self.translation {
            Some(b) => {
                let offset = crate::kinematics::SpacetimePoint::from_coords(b)?;
                Ok(map.with_translation(&offset)?)
            }
            None => Ok(map),
        }
    }

    pub fn from_frame_map(m: &FrameMap) -> Self {
        let translation = m.translation();
        let translation = if translation.iter().all(|v| *v == 0.0) {
            None
        } else {
            Some(translation.iter().copied().collect())
        };
        let boost_like = m.branch() != Branch::GeneralLinear && m.dim() == Dimension::OnePlusOne;
        MapSpec {
            schema: SCHEMA_VERSION,
            branch: m.branch(),
            velocity: m.velocity().filter(|_| boost_like),
            eta: m.eta().filter(|_| boost_like),
            linear: (!boost_like).then(|| {
                m.linear()
                    .row_iter()
                    .map(|r| r.iter().copied().collect())
                    .collect()
            }),
            translation,
            c: m.c(),
        }
    }
}

/// Parses an experiment document: the [`ExperimentConfig`] fields plus
/// `"schema": 1`. Unknown fields are rejected.
pub fn experiment_from_json(text: &str) -> Result<ExperimentConfig, HarnessError> {
    let mut value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| HarnessError::Json("experiment must be a JSON object".into()))?;
    let schema = obj
        .remove("schema")
        .ok_or_else(|| HarnessError::Json("missing field `schema`".into()))?;
    check_schema(
        schema
            .as_u64()
            .ok_or_else(|| HarnessError::Json("`schema` must be an unsigned integer".into()))?,
    )?;
    let config: ExperimentConfig = serde_json::from_value(value)?;
    config.validate()?;
    Ok(config)
}

pub fn experiment_to_json(config: &ExperimentConfig) -> String {
    let mut value = serde_json::to_value(config).expect("config serializes");
    if let Some(obj) = value.as_object_mut() {
        obj.insert("schema".into(), SCHEMA_VERSION.into());
    }
    serde_json::to_string_pretty(&value).expect("value serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub paper_ref: String,
    pub pass: bool,
    pub detail: String,
}

/// Machine-readable check report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<ReportEntry>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} [{}] {}: {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.paper_ref,
                c.id,
                c.detail
            ));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        out
    }
}
