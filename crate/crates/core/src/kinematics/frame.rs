use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{Dimension, KinematicsError, SpacetimePoint, SpeedOfLight};
use crate::tolerance::LIGHT_SPEED_GUARD;

/// Which family a [`FrameMap`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Subluminal,
    Superluminal,
    GeneralLinear,
}

/// The overall sign of the superluminal branch.
///
/// Nothing fixes this sign by continuity from `V -> 0`, so it is always an
/// explicit argument and never defaulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Eta {
    Plus,
    Minus,
}

impl Eta {
    pub const BOTH: [Eta; 2] = [Eta::Plus, Eta::Minus];

    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Eta::Plus => 1.0,
            Eta::Minus => -1.0,
        }
    }
}

impl TryFrom<i8> for Eta {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Eta::Plus),
            -1 => Ok(Eta::Minus),
            other => Err(format!("eta must be +1 or -1, got {other}")),
        }
    }
}

impl From<Eta> for i8 {
    fn from(e: Eta) -> i8 {
        match e {
            Eta::Plus => 1,
            Eta::Minus => -1,
        }
    }
}

/// An affine map `p -> L p + b` between coordinate descriptions.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameMap {
    branch: Branch,
    velocity: Option<f64>,
    eta: Option<Eta>,
    linear: DMatrix<f64>,
    translation: DVector<f64>,
    c: SpeedOfLight,
}

impl FrameMap {
    pub fn identity(dim: Dimension, c: SpeedOfLight) -> Self {
        let n = dim.len();
        FrameMap {
            branch: Branch::GeneralLinear,
            velocity: None,
            eta: None,
            linear: DMatrix::identity(n, n),
            translation: DVector::zeros(n),
            c,
        }
    }

    /// The standard 1+1 boost with velocity `velocity`, `|V| < c`.
    pub fn boost(velocity: f64, c: SpeedOfLight) -> Result<Self, KinematicsError> {
        let gamma = subluminal_gamma(velocity, c)?;
        let cv = c.value();
        let linear = DMatrix::from_row_slice(
            2,
            2,
            &[
                gamma,
                -gamma * velocity / (cv * cv),
                -gamma * velocity,
                gamma,
            ],
        );
        Ok(FrameMap {
            branch: Branch::Subluminal,
            velocity: Some(velocity),
            eta: None,
            linear,
            translation: DVector::zeros(2),
            c,
        })
    }

    /// The formal superluminal 1+1 map, `|V| > c`, with explicit sign `eta`.
    pub fn superluminal(velocity: f64, eta: Eta, c: SpeedOfLight) -> Result<Self, KinematicsError> {
        let gamma = superluminal_gamma(velocity, c)?;
        let cv = c.value();
        let k = eta.sign() * gamma;
        let linear =
            DMatrix::from_row_slice(2, 2, &[k, -k * velocity / (cv * cv), -k * velocity, k]);
        Ok(FrameMap {
            branch: Branch::Superluminal,
            velocity: Some(velocity),
            eta: Some(eta),
            linear,
            translation: DVector::zeros(2),
            c,
        })
    }

    /// A pure Lorentz boost in 1+3 with velocity vector `velocity`.
    pub fn boost_3d(velocity: [f64; 3], c: SpeedOfLight) -> Result<Self, KinematicsError> {
        let cv = c.value();
        let speed = velocity.iter().map(|v| v * v).sum::<f64>().sqrt();
        let gamma = subluminal_gamma(speed, c)?;
        let mut m = DMatrix::identity(4, 4);
        m[(0, 0)] = gamma;
        for i in 0..3 {
            m[(0, i + 1)] = -gamma * velocity[i] / (cv * cv);
            m[(i + 1, 0)] = -gamma * velocity[i];
            if speed > 0.0 {
                for j in 0..3 {
                    m[(i + 1, j + 1)] +=
                        (gamma - 1.0) * velocity[i] * velocity[j] / (speed * speed);
                }
            }
        }
        Self::general(m, DVector::zeros(4), c)
    }

    /// A spatial rotation in 1+3 about `axis` by `angle` radians.
    pub fn rotation_3d(
        axis: [f64; 3],
        angle: f64,
        c: SpeedOfLight,
    ) -> Result<Self, KinematicsError> {
        let axis = nalgebra::Vector3::from(axis);
        let rot = match nalgebra::Unit::try_new(axis, 1e-15) {
            Some(unit) => nalgebra::Rotation3::from_axis_angle(&unit, angle),
            None => nalgebra::Rotation3::identity(),
        };
        let mut m = DMatrix::identity(4, 4);
        for i in 0..3 {
            for j in 0..3 {
                m[(i + 1, j + 1)] = rot[(i, j)];
            }
        }
        Self::general(m, DVector::zeros(4), c)
    }

    /// An arbitrary invertible affine map, tagged general-linear.
    pub fn general(
        linear: DMatrix<f64>,
        translation: DVector<f64>,
        c: SpeedOfLight,
    ) -> Result<Self, KinematicsError> {
        let n = linear.nrows();
        if Dimension::from_len(n).is_none() || linear.ncols() != n {
            return Err(KinematicsError::BadMatrixShape {
                expected: if n >= 4 { 4 } else { 2 },
                rows: linear.nrows(),
                cols: linear.ncols(),
            });
        }
        if translation.len() != n {
            return Err(KinematicsError::BadMatrixShape {
                expected: n,
                rows: translation.len(),
                cols: 1,
            });
        }
        for &v in linear.iter().chain(translation.iter()) {
            if !v.is_finite() {
                return Err(KinematicsError::NonFinite {
                    what: "matrix entry",
                    value: v,
                });
            }
        }
        let map = FrameMap {
            branch: Branch::GeneralLinear,
            velocity: None,
            eta: None,
            linear,
            translation,
            c,
        };
        map.ensure_invertible()?;
        Ok(map)
    }

    /// Returns the same map followed by a shift of the origin by `offset`.
    pub fn with_translation(mut self, offset: &SpacetimePoint) -> Result<Self, KinematicsError> {
        if offset.dim() != self.dim() {
            return Err(KinematicsError::DimensionMismatch {
                expected: self.dim(),
                found: offset.dim(),
            });
        }
        self.translation = offset.to_vector();
        Ok(self)
    }

    /// Scales the linear part by `factor`, dropping any boost tag.
    pub fn scaled(&self, factor: f64) -> Result<Self, KinematicsError> {
        Self::general(
            &self.linear * factor,
            self.translation.clone() * factor,
            self.c,
        )
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn velocity(&self) -> Option<f64> {
        self.velocity
    }

    pub fn eta(&self) -> Option<Eta> {
        self.eta
    }

    pub fn linear(&self) -> &DMatrix<f64> {
        &self.linear
    }

    pub fn translation(&self) -> &DVector<f64> {
        &self.translation
    }

    pub fn c(&self) -> SpeedOfLight {
        self.c
    }

    pub fn dim(&self) -> Dimension {
        Dimension::from_len(self.linear.nrows()).expect("validated at construction")
    }

    /// Determinant divided by the scale `(|L|_F / sqrt(n))^n`, so that an
    /// orthogonal matrix scores 1 regardless of overall size.
    pub fn relative_determinant(&self) -> f64 {
        let n = self.linear.nrows() as f64;
        let scale = self.linear.norm() / n.sqrt();
        if scale == 0.0 {
            return 0.0;
        }
        self.linear.determinant() / scale.powf(n)
    }

    fn ensure_invertible(&self) -> Result<(), KinematicsError> {
        let rel = self.relative_determinant();
        if rel.abs() <= 1e-12 || !rel.is_finite() {
            Err(KinematicsError::Singular(rel))
        } else {
            Ok(())
        }
    }

    pub fn apply(&self, p: &SpacetimePoint) -> Result<SpacetimePoint, KinematicsError> {
        if p.dim() != self.dim() {
            return Err(KinematicsError::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        let image = &self.linear * p.to_vector() + &self.translation;
        SpacetimePoint::from_vector(&image)
    }

    /// Applies the linear part only, as appropriate for displacement vectors.
    pub fn apply_linear(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.linear * v
    }
}

fn subluminal_gamma(velocity: f64, c: SpeedOfLight) -> Result<f64, KinematicsError> {
    let beta = velocity / c.value();
    if !velocity.is_finite() || beta.abs() >= 1.0 - LIGHT_SPEED_GUARD {
        return Err(KinematicsError::NotSubluminal {
            velocity,
            c: c.value(),
        });
    }
    Ok(1.0 / (1.0 - beta * beta).sqrt())
}

fn superluminal_gamma(velocity: f64, c: SpeedOfLight) -> Result<f64, KinematicsError> {
    let beta = velocity / c.value();
    if !velocity.is_finite() || beta.abs() <= 1.0 + LIGHT_SPEED_GUARD {
        return Err(KinematicsError::NotSuperluminal {
            velocity,
            c: c.value(),
        });
    }
    Ok(1.0 / (beta * beta - 1.0).sqrt())
}

/// Boosts a single event. 1+3 events are boosted along the x axis.
pub fn lorentz_boost(
    p: &SpacetimePoint,
    velocity: f64,
    c: SpeedOfLight,
) -> Result<SpacetimePoint, KinematicsError> {
    let map = match p.dim() {
        Dimension::OnePlusOne => FrameMap::boost(velocity, c)?,
        Dimension::OnePlusThree => FrameMap::boost_3d([velocity, 0.0, 0.0], c)?,
    };
    map.apply(p)
}

/// Applies the superluminal branch to a 1+1 event.
pub fn superluminal_map(
    p: &SpacetimePoint,
    velocity: f64,
    eta: Eta,
    c: SpeedOfLight,
) -> Result<SpacetimePoint, KinematicsError> {
    FrameMap::superluminal(velocity, eta, c)?.apply(p)
}

/// The affine composition `f ∘ g` (apply `g` first).
///
/// Two subluminal boosts compose into the subluminal boost with the
/// relativistically added velocity. Every other combination is reported as
/// general-linear; use [`super::classify_cone_preserver`] to tell the
/// interval-preserving products (super∘super) from the interval-flipping
/// ones (mixed).
pub fn compose(f: &FrameMap, g: &FrameMap) -> Result<FrameMap, KinematicsError> {
    if f.dim() != g.dim() {
        return Err(KinematicsError::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    if f.c != g.c {
        return Err(KinematicsError::SpeedOfLightMismatch(
            f.c.value(),
            g.c.value(),
        ));
    }
    let linear = &f.linear * &g.linear;
    let translation = &f.linear * &g.translation + &f.translation;

    if let (Branch::Subluminal, Branch::Subluminal, Some(v1), Some(v2)) =
        (f.branch, g.branch, f.velocity, g.velocity)
    {
        let cv = f.c.value();
        let v = (v1 + v2) / (1.0 + v1 * v2 / (cv * cv));
        let mut boost = FrameMap::boost(v, f.c)?;
        boost.translation = translation;
        return Ok(boost);
    }
    // Identity-like general maps keep the other operand's tag.
    if is_identity(&g.linear) {
        let mut out = f.clone();
        out.translation = translation;
        return Ok(out);
    }
    if is_identity(&f.linear) {
        let mut out = g.clone();
        out.translation = translation;
        return Ok(out);
    }
    FrameMap::general(linear, translation, f.c)
}

fn is_identity(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    *m == DMatrix::identity(n, n)
}
