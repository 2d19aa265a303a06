use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Amplitude, AmplitudeError, ProbabilityRule};

/// Series/parallel structure of alternatives leading to one outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlternativeGraph {
    Leaf(Amplitude),
    /// Segments traversed one after the other.
    Sequence(Vec<AlternativeGraph>),
    /// Alternatives that recombine. `distinguishable` marks a which-way record.
    Branch {
        children: Vec<AlternativeGraph>,
        distinguishable: bool,
    },
}

/// Which-way record: `(branch node id, child index)` pairs, kept sorted.
type Record = Vec<(usize, usize)>;

impl AlternativeGraph {
    pub fn leaf(a: Amplitude) -> Self {
        AlternativeGraph::Leaf(a)
    }

    pub fn sequence(parts: impl IntoIterator<Item = Amplitude>) -> Self {
        AlternativeGraph::Sequence(parts.into_iter().map(AlternativeGraph::Leaf).collect())
    }

    pub fn branch(children: Vec<AlternativeGraph>, distinguishable: bool) -> Self {
        AlternativeGraph::Branch {
            children,
            distinguishable,
        }
    }

    pub fn validate(&self) -> Result<(), AmplitudeError> {
        match self {
            AlternativeGraph::Leaf(a) => {
                if a.is_finite() {
                    Ok(())
                } else {
                    Err(AmplitudeError::NonFinite { re: a.re, im: a.im })
                }
            }
            AlternativeGraph::Sequence(parts) => {
                if parts.is_empty() {
                    return Err(AmplitudeError::EmptySequence);
                }
                parts.iter().try_for_each(Self::validate)
            }
            AlternativeGraph::Branch { children, .. } => {
                if children.len() < 2 {
                    return Err(AmplitudeError::BranchTooSmall(children.len()));
                }
                children.iter().try_for_each(Self::validate)
            }
        }
    }

    /// Coherent components, one per distinct which-way record.
    fn components(&self, next_id: &mut usize) -> Vec<(Record, Amplitude)> {
        match self {
            AlternativeGraph::Leaf(a) => vec![(Vec::new(), *a)],
            AlternativeGraph::Sequence(parts) => {
                let mut acc: Vec<(Record, Amplitude)> = vec![(Vec::new(), Amplitude::ONE)];
                for part in parts {
                    let comps = part.components(next_id);
                    let mut merged = BTreeMap::new();
                    for (ra, a) in &acc {
                        for (rb, b) in &comps {
                            let mut r = ra.clone();
                            r.extend_from_slice(rb);
                            r.sort_unstable();
                            let slot = merged.entry(r).or_insert(Amplitude::ZERO);
                            *slot = *slot + super::concat(*a, *b);
                        }
                    }
                    acc = merged.into_iter().collect();
                }
                acc
            }
            AlternativeGraph::Branch {
                children,
                distinguishable,
            } => {
                let id = *next_id;
                *next_id += 1;
                let mut merged: BTreeMap<Record, Amplitude> = BTreeMap::new();
                for (k, child) in children.iter().enumerate() {
                    for (mut r, a) in child.components(next_id) {
                        if *distinguishable {
                            r.push((id, k));
                            r.sort_unstable();
                        }
                        let slot = merged.entry(r).or_insert(Amplitude::ZERO);
                        *slot = super::sum_alternatives(*slot, a);
                    }
                }
                merged.into_iter().collect()
            }
        }
    }

    /// Unnormalized outcome weight: the rule applied to each coherent
    /// component, summed over which-way records.
    pub fn weight(&self, rule: &dyn ProbabilityRule) -> Result<f64, AmplitudeError> {
        self.validate()?;
        let mut total = 0.0;
        for (_, a) in self.components(&mut 0) {
            let w = rule.weight(a);
            if !(w.is_finite() && w >= 0.0) {
                return Err(AmplitudeError::InvalidWeight {
                    rule: rule.name().to_string(),
                    weight: w,
                });
            }
            total += w;
        }
        Ok(total)
    }
}

/// A labelled, mutually exclusive outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub label: String,
    pub graph: AlternativeGraph,
}

impl Outcome {
    pub fn new(label: impl Into<String>, graph: AlternativeGraph) -> Self {
        Outcome {
            label: label.into(),
            graph,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub labels: Vec<String>,
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
}

/// Weighs every declared outcome and normalizes over them.
pub fn evaluate(
    outcomes: &[Outcome],
    rule: &dyn ProbabilityRule,
) -> Result<Evaluation, AmplitudeError> {
    if outcomes.is_empty() {
        return Err(AmplitudeError::NoOutcomes);
    }
    let raw = outcomes
        .iter()
        .map(|o| o.graph.weight(rule))
        .collect::<Result<Vec<_>, _>>()?;
    let total: f64 = raw.iter().sum();
    if total <= 0.0 {
        return Err(AmplitudeError::AllOutcomesZero);
    }
    Ok(Evaluation {
        labels: outcomes.iter().map(|o| o.label.clone()).collect(),
        normalized: raw.iter().map(|w| w / total).collect(),
        raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitudes::{phase, SquaredNorm};
    use std::f64::consts::PI;

    fn two_paths(phi: f64, distinguishable: bool) -> AlternativeGraph {
        AlternativeGraph::branch(
            vec![
                AlternativeGraph::leaf(Amplitude::ONE),
                AlternativeGraph::leaf(phase(phi)),
            ],
            distinguishable,
        )
    }

    #[test]
    fn cancellation_and_mixture() {
        let coherent = two_paths(PI, false).weight(&SquaredNorm).unwrap();
        assert!(coherent < 1e-30);
        let mixed = two_paths(PI, true).weight(&SquaredNorm).unwrap();
        assert!((mixed - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_leaf_weight() {
        let g = AlternativeGraph::leaf(Amplitude::new(0.6, 0.8));
        assert!((g.weight(&SquaredNorm).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn well_formedness() {
        assert_eq!(
            AlternativeGraph::Sequence(vec![]).weight(&SquaredNorm),
            Err(AmplitudeError::EmptySequence)
        );
        let lonely = AlternativeGraph::branch(vec![AlternativeGraph::leaf(Amplitude::ONE)], false);
        assert_eq!(lonely.validate(), Err(AmplitudeError::BranchTooSmall(1)));
        let nan = AlternativeGraph::leaf(Amplitude::new(f64::NAN, 0.0));
        assert!(matches!(
            nan.validate(),
            Err(AmplitudeError::NonFinite { .. })
        ));
    }

    #[test]
    fn all_zero_outcomes_is_an_error() {
        let outcomes = [Outcome::new("only", two_paths(PI, false))];
        // cos(pi) + i sin(pi) leaves a ~1e-16 imaginary residue; use an exact zero.
        let exact = [Outcome::new(
            "only",
            AlternativeGraph::branch(
                vec![
                    AlternativeGraph::leaf(Amplitude::ONE),
                    AlternativeGraph::leaf(Amplitude::real(-1.0)),
                ],
                false,
            ),
        )];
        assert_eq!(
            evaluate(&exact, &SquaredNorm),
            Err(AmplitudeError::AllOutcomesZero)
        );
        assert!(evaluate(&[], &SquaredNorm).is_err());
        // the near-zero case normalizes rather than producing NaN
        let e = evaluate(&outcomes, &SquaredNorm).unwrap();
        assert_eq!(e.normalized, vec![1.0]);
    }

    #[test]
    fn normalization_over_outcomes() {
        let outcomes = [
            Outcome::new("a", AlternativeGraph::leaf(Amplitude::new(0.6, 0.0))),
            Outcome::new("b", AlternativeGraph::leaf(Amplitude::new(0.0, 0.8))),
        ];
        let e = evaluate(&outcomes, &SquaredNorm).unwrap();
        assert!((e.normalized[0] - 0.36).abs() < 1e-15);
        assert!((e.normalized[1] - 0.64).abs() < 1e-15);
        assert_eq!(e.labels, vec!["a", "b"]);
    }

    #[test]
    fn record_inside_coherent_branch() {
        // A recorded split nested inside an unrecorded one: only components
        // carrying the same record interfere.
        let inner = AlternativeGraph::branch(
            vec![
                AlternativeGraph::leaf(Amplitude::real(0.5)),
                AlternativeGraph::leaf(Amplitude::real(0.5)),
            ],
            true,
        );
        let outer = AlternativeGraph::branch(
            vec![inner, AlternativeGraph::leaf(Amplitude::real(-0.5))],
            false,
        );
        // components: record(0,0): 0.5, record(0,1): 0.5, no record: -0.5
        let w = outer.weight(&SquaredNorm).unwrap();
        assert!((w - 0.75).abs() < 1e-15);
    }

    #[test]
    fn sequence_of_branches_multiplies() {
        let half = AlternativeGraph::branch(
            vec![
                AlternativeGraph::leaf(Amplitude::real(0.5)),
                AlternativeGraph::leaf(Amplitude::real(0.5)),
            ],
            false,
        );
        let g = AlternativeGraph::Sequence(vec![half.clone(), half]);
        assert!((g.weight(&SquaredNorm).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn serde_shape() {
        let g = two_paths(0.0, true);
        let json = serde_json::to_string(&g).unwrap();
        assert!(json.starts_with(r#"{"branch":{"children":[{"leaf":{"re":1.0,"im":0.0}}"#));
        let back: AlternativeGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }
}
