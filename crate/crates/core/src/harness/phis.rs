use std::f64::consts::PI;

use super::HarnessError;

/// `steps` evenly spaced phases from `start` to `stop`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl PhaseGrid {
    /// `[0, 2pi]` in 65 points.
    pub const DEFAULT: PhaseGrid = PhaseGrid {
        start: 0.0,
        stop: 2.0 * PI,
        steps: 65,
    };

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.steps)
    }
}

pub fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `steps` phases `2 pi k / steps`, one full turn without repeating the
/// endpoint. Even counts include both 0 and `pi`.
pub fn periodic_phases(steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| 2.0 * PI * k as f64 / steps as f64)
        .collect()
}

/// Parses a bound such as `1.5`, `pi`, `2pi`, `-0.5pi`.
fn parse_bound(s: &str) -> Option<f64> {
    let s = s.trim();
    match s.strip_suffix("pi") {
        Some("") => Some(PI),
        Some("-") => Some(-PI),
        Some(k) => k.trim_end_matches('*').parse::<f64>().ok().map(|k| k * PI),
        None => s.parse().ok(),
    }
    .filter(|v| v.is_finite())
}

/// Parses `start:stop:steps`; bounds may be written as multiples of `pi`.
pub fn parse_phis(spec: &str) -> Result<PhaseGrid, HarnessError> {
    let bad = || HarnessError::Phis(spec.to_string());
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, steps] = parts.as_slice() else {
        return Err(bad());
    };
    let steps: usize = steps.trim().parse().map_err(|_| bad())?;
    if steps == 0 {
        return Err(bad());
    }
    Ok(PhaseGrid {
        start: parse_bound(start).ok_or_else(bad)?,
        stop: parse_bound(stop).ok_or_else(bad)?,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pi_multiples() {
        let g = parse_phis("0:2pi:5").unwrap();
        assert_eq!(g.values(), vec![0.0, PI / 2.0, PI, 1.5 * PI, 2.0 * PI]);
        assert_eq!(parse_phis("-pi:pi:3").unwrap().values(), vec![-PI, 0.0, PI]);
        assert_eq!(parse_phis("0:1.5:1").unwrap().values(), vec![0.0]);
        assert_eq!(parse_phis("0.5pi:2*pi:2").unwrap().start, 0.5 * PI);
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "0:1", "0:1:0", "a:1:3", "0:1:-2", "0:1:2:3", "0:nan:3"] {
            assert!(parse_phis(s).is_err(), "{s}");
        }
    }
}
