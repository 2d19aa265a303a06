use std::io::{Read, Write};

use super::{fmt_f64, HarnessError};
use crate::interference::{OutcomeDistribution, SweepRow};

pub const SWEEP_HEADER: [&str; 6] = [
    "phi",
    "p_d0",
    "p_d1",
    "p_absorbed",
    "p_d0_given_detected",
    "p_d1_given_detected",
];

const CONVENTION: &str = "# symmetric splitters: transmission sqrt(T), reflection i*sqrt(1-T); \
phase on the upper (transmitted) arm; D0 = port reached with one reflection per path";

/// Writes a sweep as CSV. Undefined conditionals are left empty.
pub fn write_sweep_csv<W: Write>(mut writer: W, rows: &[SweepRow]) -> Result<(), HarnessError> {
    writeln!(writer, "{CONVENTION}")?;
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| HarnessError::Io(e.into());
    w.write_record(SWEEP_HEADER).map_err(io)?;
    for r in rows {
        let d = &r.distribution;
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        w.write_record([
            fmt_f64(r.phi),
            fmt_f64(d.p_d0),
            fmt_f64(d.p_d1),
            fmt_f64(d.p_absorbed),
            opt(d.p_d0_given_detected),
            opt(d.p_d1_given_detected),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn parse_sweep_csv<R: Read>(reader: R) -> Result<Vec<SweepRow>, HarnessError> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(reader);
    let parse_err = |line: u64, message: String| HarnessError::Parse { line, message };
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != SWEEP_HEADER {
        return Err(parse_err(1, "unexpected sweep header".into()));
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record =
            record.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let num = |k: usize| -> Result<f64, HarnessError> {
            record.get(k).and_then(|s| s.parse().ok()).ok_or_else(|| {
                parse_err(line, format!("column {} is not a number", SWEEP_HEADER[k]))
            })
        };
        let opt = |k: usize| -> Result<Option<f64>, HarnessError> {
            match record.get(k) {
                Some("") => Ok(None),
                _ => num(k).map(Some),
            }
        };
        rows.push(SweepRow {
            phi: num(0)?,
            distribution: OutcomeDistribution {
                p_d0: num(1)?,
                p_d1: num(2)?,
                p_absorbed: num(3)?,
                p_d0_given_detected: opt(4)?,
                p_d1_given_detected: opt(5)?,
            },
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interference::{phase_sweep, BlockedArm, ExperimentConfig};
    use proptest::prelude::*;

    #[test]
    fn blocked_fully_has_empty_conditionals() {
        let config = ExperimentConfig {
            splitter1: 1.0,
            blocked_arm: BlockedArm::Upper,
            ..Default::default()
        };
        let rows = phase_sweep(&config, &[0.0, 1.0]).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("phi,p_d0"));
        assert!(text.lines().nth(2).unwrap().ends_with(",,"));
        assert_eq!(parse_sweep_csv(buf.as_slice()).unwrap(), rows);
    }

    proptest! {
        #[test]
        fn round_trip_is_lossless(
            s1 in 0.0..=1.0f64,
            s2 in 0.0..=1.0f64,
            phis in prop::collection::vec(-10.0..10.0f64, 1..8),
        ) {
            let config = ExperimentConfig { splitter1: s1, splitter2: s2, ..Default::default() };
            let rows = phase_sweep(&config, &phis).unwrap();
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &rows).unwrap();
            let back = parse_sweep_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back.len(), rows.len());
            for (a, b) in back.iter().zip(&rows) {
                prop_assert_eq!(a.phi.to_bits(), b.phi.to_bits());
                prop_assert!(a.distribution.bit_identical(&b.distribution));
            }
        }
    }
}
