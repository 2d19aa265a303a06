use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::KinematicsError;

/// Number of spatial dimensions attached to an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dimension {
    #[serde(rename = "1+1")]
    OnePlusOne,
    #[serde(rename = "1+3")]
    OnePlusThree,
}

impl Dimension {
    pub fn spatial_len(self) -> usize {
        match self {
            Dimension::OnePlusOne => 1,
            Dimension::OnePlusThree => 3,
        }
    }

    /// Total number of coordinates, time included.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.spatial_len() + 1
    }

    pub fn from_len(len: usize) -> Option<Self> {
        match len {
            2 => Some(Dimension::OnePlusOne),
            4 => Some(Dimension::OnePlusThree),
            _ => None,
        }
    }
}

/// The speed of light, a positive finite constant (default 1, natural units).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct SpeedOfLight(f64);

impl SpeedOfLight {
    pub const NATURAL: SpeedOfLight = SpeedOfLight(1.0);

    pub fn new(c: f64) -> Result<Self, KinematicsError> {
        if c.is_finite() && c > 0.0 {
            Ok(SpeedOfLight(c))
        } else {
            Err(KinematicsError::InvalidSpeedOfLight(c))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for SpeedOfLight {
    fn default() -> Self {
        Self::NATURAL
    }
}

impl TryFrom<f64> for SpeedOfLight {
    type Error = KinematicsError;

    fn try_from(c: f64) -> Result<Self, Self::Error> {
        SpeedOfLight::new(c)
    }
}

impl From<SpeedOfLight> for f64 {
    fn from(c: SpeedOfLight) -> f64 {
        c.0
    }
}

/// An event with finite coordinates in 1+1 or 1+3 dimensions.
///
/// Unused spatial slots of a 1+1 event are kept at zero so equality and
/// hashing of the raw array stay meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    t: f64,
    x: [f64; 3],
    dim: Dimension,
}

impl SpacetimePoint {
    /// A 1+1 event `(t, x)`.
    pub fn new(t: f64, x: f64) -> Result<Self, KinematicsError> {
        check_finite("t", t)?;
        check_finite("x", x)?;
        Ok(SpacetimePoint {
            t,
            x: [x, 0.0, 0.0],
            dim: Dimension::OnePlusOne,
        })
    }

    /// A 1+3 event `(t, x, y, z)`.
    pub fn new_3d(t: f64, x: [f64; 3]) -> Result<Self, KinematicsError> {
        check_finite("t", t)?;
        for v in x {
            check_finite("spatial coordinate", v)?;
        }
        Ok(SpacetimePoint {
            t,
            x,
            dim: Dimension::OnePlusThree,
        })
    }

    /// Builds an event from `[t, x, ...]`; the slice length fixes the dimension.
    pub fn from_coords(coords: &[f64]) -> Result<Self, KinematicsError> {
        match coords {
            [t, x] => Self::new(*t, *x),
            [t, x, y, z] => Self::new_3d(*t, [*x, *y, *z]),
            _ => Err(KinematicsError::BadMatrixShape {
                expected: 2,
                rows: coords.len(),
                cols: 1,
            }),
        }
    }

    pub fn origin(dim: Dimension) -> Self {
        SpacetimePoint {
            t: 0.0,
            x: [0.0; 3],
            dim,
        }
    }

    #[inline]
    pub fn t(&self) -> f64 {
        self.t
    }

    /// First spatial coordinate.
    #[inline]
    pub fn x(&self) -> f64 {
        self.x[0]
    }

    #[inline]
    pub fn spatial(&self) -> &[f64] {
        &self.x[..self.dim.spatial_len()]
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim.len());
        out.push(self.t);
        out.extend_from_slice(self.spatial());
        out
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_vec(self.coords())
    }

    pub(crate) fn from_vector(v: &DVector<f64>) -> Result<Self, KinematicsError> {
        Self::from_coords(v.as_slice())
    }

    /// Coordinate difference `other - self` as a raw vector.
    pub fn separation_to(&self, other: &SpacetimePoint) -> Result<DVector<f64>, KinematicsError> {
        self.same_dim(other)?;
        Ok(other.to_vector() - self.to_vector())
    }

    pub(crate) fn same_dim(&self, other: &SpacetimePoint) -> Result<(), KinematicsError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(KinematicsError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }
}

fn check_finite(what: &'static str, value: f64) -> Result<(), KinematicsError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(KinematicsError::NonFinite { what, value })
    }
}
