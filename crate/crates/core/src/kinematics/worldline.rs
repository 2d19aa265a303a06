use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::interval::quadratic_form;
use super::{FrameMap, KinematicsError, SpacetimePoint, SpeedOfLight};
use crate::tolerance::GEOMETRY_TOL;

/// A simple piecewise-linear worldline with strictly increasing proper-time
/// labels, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Worldline {
    vertices: Vec<SpacetimePoint>,
    proper_time: Vec<f64>,
}

impl Worldline {
    pub fn new(
        vertices: Vec<SpacetimePoint>,
        proper_time: Vec<f64>,
    ) -> Result<Self, KinematicsError> {
        let w = Self::new_unchecked(vertices, proper_time);
        w.validate_labels()?;
        let report = analyze_polyline(&w.vertices)?;
        if !report.simple {
            return Err(KinematicsError::InvalidWorldline(format!(
                "polyline is not simple (crossings {:?}, degenerate segments {:?})",
                report.crossings, report.degenerate_segments
            )));
        }
        Ok(w)
    }

    /// Labels vertices `0, 1, 2, ...`.
    pub fn with_index_labels(vertices: Vec<SpacetimePoint>) -> Result<Self, KinematicsError> {
        let labels = (0..vertices.len()).map(|i| i as f64).collect();
        Self::new(vertices, labels)
    }

    /// Labels vertices by accumulated proper time; every segment must be
    /// future-directed timelike.
    pub fn from_timelike(
        vertices: Vec<SpacetimePoint>,
        c: SpeedOfLight,
    ) -> Result<Self, KinematicsError> {
        let mut labels = Vec::with_capacity(vertices.len());
        let mut tau = 0.0;
        for (i, v) in vertices.iter().enumerate() {
            if i > 0 {
                let sep = vertices[i - 1].separation_to(v)?;
                let (value, _) = quadratic_form(sep.as_slice(), c);
                if sep[0] <= 0.0 || value >= 0.0 {
                    return Err(KinematicsError::InvalidWorldline(format!(
                        "segment {} is not future-directed timelike",
                        i - 1
                    )));
                }
                tau += (-value).sqrt() / c.value();
            }
            labels.push(tau);
        }
        Self::new(vertices, labels)
    }

    /// Skips the simplicity and label checks. Only meant for building
    /// deliberately broken fixtures to exercise the detectors.
    pub fn new_unchecked(vertices: Vec<SpacetimePoint>, proper_time: Vec<f64>) -> Self {
        Worldline {
            vertices,
            proper_time,
        }
    }

    fn validate_labels(&self) -> Result<(), KinematicsError> {
        if self.vertices.len() != self.proper_time.len() {
            return Err(KinematicsError::InvalidWorldline(format!(
                "{} vertices but {} proper-time labels",
                self.vertices.len(),
                self.proper_time.len()
            )));
        }
        if let Some(first) = self.vertices.first() {
            for v in &self.vertices[1..] {
                first.same_dim(v)?;
            }
        }
        if self.proper_time.iter().any(|t| !t.is_finite()) {
            return Err(KinematicsError::InvalidWorldline(
                "proper-time labels must be finite".into(),
            ));
        }
        if self.proper_time.windows(2).any(|w| w[1] <= w[0]) {
            return Err(KinematicsError::InvalidWorldline(
                "proper-time labels must strictly increase".into(),
            ));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[SpacetimePoint] {
        &self.vertices
    }

    pub fn proper_time(&self) -> &[f64] {
        &self.proper_time
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// The part of `w` strictly before vertex `index` in proper time.
pub fn past_worldline_segment(w: &Worldline, index: usize) -> Result<Worldline, KinematicsError> {
    let tau = *w
        .proper_time
        .get(index)
        .ok_or(KinematicsError::IndexOutOfRange {
            index,
            len: w.len(),
        })?;
    let (vertices, proper_time) = w
        .vertices
        .iter()
        .zip(&w.proper_time)
        .filter(|(_, &t)| t < tau)
        .map(|(v, t)| (*v, *t))
        .unzip();
    Ok(Worldline {
        vertices,
        proper_time,
    })
}

/// Outcome of the simplicity analysis of a polyline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolylineReport {
    /// Segments whose endpoints coincide.
    pub degenerate_segments: Vec<usize>,
    /// Segment pairs touching away from their shared junction, including
    /// consecutive segments that fold back onto each other.
    pub crossings: Vec<(usize, usize)>,
    /// For each interior vertex, the number of connected components of the
    /// segment-contact graph once that vertex's junction is removed.
    pub components_after_removal: Vec<usize>,
    pub simple: bool,
}

/// Tests a polyline for simplicity via pairwise segment contacts and
/// component counting on the segment-contact graph.
pub fn analyze_polyline(vertices: &[SpacetimePoint]) -> Result<PolylineReport, KinematicsError> {
    if let Some(first) = vertices.first() {
        for v in &vertices[1..] {
            first.same_dim(v)?;
        }
    }
    let coords: Vec<Vec<f64>> = vertices.iter().map(|v| v.coords()).collect();
    let eps = GEOMETRY_TOL * bounding_diagonal(&coords).max(f64::MIN_POSITIVE);
    let n_seg = coords.len().saturating_sub(1);

    let degenerate_segments: Vec<usize> = (0..n_seg)
        .filter(|&i| norm(&sub(&coords[i + 1], &coords[i])) <= eps)
        .collect();

    let mut crossings = Vec::new();
    for i in 0..n_seg {
        if i + 2 <= n_seg && folds_back(&coords[i], &coords[i + 1], &coords[i + 2]) {
            crossings.push((i, i + 1));
        }
        for j in (i + 2)..n_seg {
            let d = segment_distance(&coords[i], &coords[i + 1], &coords[j], &coords[j + 1]);
            if d <= eps {
                crossings.push((i, j));
            }
        }
    }

    let components_after_removal: Vec<usize> = (1..n_seg)
        .map(|k| {
            let mut uf = UnionFind::<usize>::new(n_seg);
            for j in 1..n_seg {
                if j != k {
                    uf.union(j - 1, j);
                }
            }
            for &(a, b) in &crossings {
                uf.union(a, b);
            }
            let mut roots: Vec<usize> = (0..n_seg).map(|s| uf.find(s)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len()
        })
        .collect();

    let simple = degenerate_segments.is_empty()
        && crossings.is_empty()
        && components_after_removal.iter().all(|&c| c == 2);
    Ok(PolylineReport {
        degenerate_segments,
        crossings,
        components_after_removal,
        simple,
    })
}

/// Maps every vertex of `w` through `m` and reports whether the image is
/// still a simple polyline (homeomorphic to an interval, hence not a "Y").
pub fn check_no_branching(w: &Worldline, m: &FrameMap) -> Result<bool, KinematicsError> {
    let image = w
        .vertices
        .iter()
        .map(|v| m.apply(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(analyze_polyline(&image)?.simple)
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn bounding_diagonal(points: &[Vec<f64>]) -> f64 {
    let Some(first) = points.first() else {
        return 0.0;
    };
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in points {
        for (k, &v) in p.iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    norm(&sub(&hi, &lo))
}

/// Consecutive segments `a-b` and `b-c` overlap beyond `b` iff they are
/// collinear and point the same way away from `b`.
fn folds_back(a: &[f64], b: &[f64], c: &[f64]) -> bool {
    let u = sub(a, b);
    let w = sub(c, b);
    let (nu, nw) = (norm(&u), norm(&w));
    if nu == 0.0 || nw == 0.0 {
        return false;
    }
    let diff: Vec<f64> = u.iter().zip(&w).map(|(x, y)| x / nu - y / nw).collect();
    norm(&diff) <= GEOMETRY_TOL
}

/// Closest distance between segments `p1-q1` and `p2-q2` in any dimension.
fn segment_distance(p1: &[f64], q1: &[f64], p2: &[f64], q2: &[f64]) -> f64 {
    let d1 = sub(q1, p1);
    let d2 = sub(q2, p2);
    let r = sub(p1, p2);
    let a = dot(&d1, &d1);
    let e = dot(&d2, &d2);
    let f = dot(&d2, &r);
    let (s, t) = if a == 0.0 && e == 0.0 {
        (0.0, 0.0)
    } else if a == 0.0 {
        (0.0, (f / e).clamp(0.0, 1.0))
    } else {
        let c = dot(&d1, &r);
        if e == 0.0 {
            ((-c / a).clamp(0.0, 1.0), 0.0)
        } else {
            let b = dot(&d1, &d2);
            let denom = a * e - b * b;
            let mut s = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
            (s, t)
        }
    };
    let closest: Vec<f64> = (0..p1.len())
        .map(|k| (p1[k] + d1[k] * s) - (p2[k] + d2[k] * t))
        .collect();
    norm(&closest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{Dimension, Eta};

    const C: SpeedOfLight = SpeedOfLight::NATURAL;

    fn pts(raw: &[(f64, f64)]) -> Vec<SpacetimePoint> {
        raw.iter()
            .map(|&(t, x)| SpacetimePoint::new(t, x).unwrap())
            .collect()
    }

    fn three_vertex_line() -> Worldline {
        Worldline::from_timelike(pts(&[(0.0, 0.0), (1.0, 0.5), (2.0, 0.2)]), C).unwrap()
    }

    #[test]
    fn past_segment_prefixes() {
        let w = three_vertex_line();
        assert!(past_worldline_segment(&w, 0).unwrap().is_empty());
        assert_eq!(
            past_worldline_segment(&w, 1).unwrap().vertices(),
            &w.vertices()[..1]
        );
        assert_eq!(
            past_worldline_segment(&w, 2).unwrap().vertices(),
            &w.vertices()[..2]
        );
        assert!(matches!(
            past_worldline_segment(&w, 3),
            Err(KinematicsError::IndexOutOfRange { index: 3, len: 3 })
        ));
    }

    #[test]
    fn proper_time_accumulates() {
        let w = Worldline::from_timelike(pts(&[(0.0, 0.0), (1.25, 0.75)]), C).unwrap();
        // sqrt(1.25^2 - 0.75^2) = 1
        assert!((w.proper_time()[1] - 1.0).abs() < 1e-15);
        assert!(Worldline::from_timelike(pts(&[(0.0, 0.0), (1.0, 2.0)]), C).is_err());
        assert!(Worldline::from_timelike(pts(&[(0.0, 0.0), (-1.0, 0.0)]), C).is_err());
    }

    #[test]
    fn labels_must_increase() {
        let err = Worldline::new(pts(&[(0.0, 0.0), (1.0, 0.0)]), vec![1.0, 1.0]);
        assert!(err.is_err());
        let err = Worldline::new(pts(&[(0.0, 0.0), (1.0, 0.0)]), vec![0.0]);
        assert!(err.is_err());
    }

    #[test]
    fn crossing_polyline_is_detected() {
        // bow-tie: segment 0 and segment 2 cross at (0.5, 0.5)
        let v = pts(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]);
        let report = analyze_polyline(&v).unwrap();
        assert_eq!(report.crossings, vec![(0, 2)]);
        assert_eq!(report.components_after_removal, vec![1, 1]);
        assert!(!report.simple);
        assert!(Worldline::with_index_labels(v.clone()).is_err());
        let fixture = Worldline::new_unchecked(v, vec![0.0, 1.0, 2.0, 3.0]);
        let id = FrameMap::identity(Dimension::OnePlusOne, C);
        assert!(!check_no_branching(&fixture, &id).unwrap());
    }

    #[test]
    fn fold_back_and_repeats_are_not_simple() {
        let fold = pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0)]);
        assert_eq!(analyze_polyline(&fold).unwrap().crossings, vec![(0, 1)]);
        let repeat = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (2.0, 1.0)]);
        assert_eq!(
            analyze_polyline(&repeat).unwrap().degenerate_segments,
            vec![1]
        );
        let touching = pts(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 0.0)]);
        assert!(!analyze_polyline(&touching).unwrap().simple);
    }

    #[test]
    fn simple_polylines_survive_maps() {
        let segment = Worldline::with_index_labels(pts(&[(0.0, 0.0), (1.0, 0.3)])).unwrap();
        let zigzag = Worldline::with_index_labels(pts(&[
            (0.0, 0.0),
            (1.0, 2.0),
            (2.0, -1.0),
            (3.0, 2.5),
            (4.0, -0.5),
        ]))
        .unwrap();
        let maps = [
            FrameMap::boost(0.9, C).unwrap(),
            FrameMap::superluminal(3.0, Eta::Plus, C).unwrap(),
            FrameMap::superluminal(-1.2, Eta::Minus, C).unwrap(),
        ];
        for m in &maps {
            assert!(check_no_branching(&segment, m).unwrap());
            assert!(check_no_branching(&zigzag, m).unwrap());
        }
        let report = analyze_polyline(zigzag.vertices()).unwrap();
        assert_eq!(report.components_after_removal, vec![2, 2, 2]);
    }

    #[test]
    fn segment_distance_cases() {
        let d = segment_distance(&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]);
        assert!((d - 1.0).abs() < 1e-15);
        let d = segment_distance(&[0.0, 0.0], &[1.0, 1.0], &[0.0, 1.0], &[1.0, 0.0]);
        assert!(d < 1e-15);
        // skew lines in 4D never meet
        let d = segment_distance(
            &[0.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.5, -1.0, 1.0, 0.0],
            &[0.5, 1.0, 1.0, 0.0],
        );
        assert!((d - 1.0).abs() < 1e-15);
    }
}
