use thiserror::Error;

use super::Dimension;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("speed of light must be positive and finite, got {0}")]
    InvalidSpeedOfLight(f64),
    #[error("subluminal boost requires |V| < c, got V = {velocity} with c = {c}")]
    NotSubluminal { velocity: f64, c: f64 },
    #[error("superluminal map requires |V| > c, got V = {velocity} with c = {c}")]
    NotSuperluminal { velocity: f64, c: f64 },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: Dimension,
        found: Dimension,
    },
    #[error("maps use different speeds of light ({0} vs {1})")]
    SpeedOfLightMismatch(f64, f64),
    #[error("linear part must be a {expected}x{expected} matrix, got {rows}x{cols}")]
    BadMatrixShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("linear part is singular (relative determinant {0:e})")]
    Singular(f64),
    #[error("vertex index {index} out of range for worldline with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid worldline: {0}")]
    InvalidWorldline(String),
}
