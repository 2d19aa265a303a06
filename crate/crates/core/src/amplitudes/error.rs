use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmplitudeError {
    #[error("sequence node has no children")]
    EmptySequence,
    #[error("branch node needs at least two children, got {0}")]
    BranchTooSmall(usize),
    #[error("amplitude component is not finite: ({re}, {im})")]
    NonFinite { re: f64, im: f64 },
    #[error("no outcomes declared")]
    NoOutcomes,
    #[error("probability rule `{rule}` returned invalid weight {weight}")]
    InvalidWeight { rule: String, weight: f64 },
    #[error("every outcome has zero weight; the distribution is undefined")]
    AllOutcomesZero,
    #[error("phase grid is empty")]
    EmptyGrid,
}
