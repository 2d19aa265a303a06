use std::io::{Read, Write};

use serde::Serialize;

use super::{fmt_f64, HarnessError};
use crate::kinematics::{interval, Dimension, FrameMap, SpacetimePoint};

/// Reads an events file with header `t,x`. Errors carry the file line number.
pub fn parse_events_csv<R: Read>(reader: R) -> Result<Vec<SpacetimePoint>, HarnessError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| HarnessError::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if headers.iter().collect::<Vec<_>>() != ["t", "x"] {
        return Err(HarnessError::Parse {
            line: 1,
            message: format!(
                "expected header `t,x`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut events = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| HarnessError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |k: usize, name: &str| -> Result<f64, HarnessError> {
            let raw = record.get(k).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| HarnessError::Parse {
                    line,
                    message: format!("column `{name}`: `{raw}` is not a finite number"),
                })
        };
        let p = SpacetimePoint::new(field(0, "t")?, field(1, "x")?)?;
        events.push(p);
    }
    Ok(events)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformRow {
    pub t: f64,
    pub x: f64,
    pub t_prime: f64,
    pub x_prime: f64,
    /// Interval from the origin to the event.
    pub interval: f64,
    /// Interval from the image of the origin to the image of the event.
    pub interval_prime: f64,
}

pub fn transform_events(
    events: &[SpacetimePoint],
    map: &FrameMap,
) -> Result<Vec<TransformRow>, HarnessError> {
    let c = map.c();
    let origin = SpacetimePoint::origin(Dimension::OnePlusOne);
    let origin_image = map.apply(&origin)?;
    events
        .iter()
        .map(|p| {
            let q = map.apply(p)?;
            Ok(TransformRow {
                t: p.t(),
                x: p.x(),
                t_prime: q.t(),
                x_prime: q.x(),
                interval: interval(&origin, p, c)?,
                interval_prime: interval(&origin_image, &q, c)?,
            })
        })
        .collect()
}

pub fn write_transform_csv<W: Write>(writer: W, rows: &[TransformRow]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| HarnessError::Io(e.into());
    w.write_record(["t", "x", "t_prime", "x_prime", "interval", "interval_prime"])
        .map_err(io)?;
    for r in rows {
        w.write_record([r.t, r.x, r.t_prime, r.x_prime, r.interval, r.interval_prime].map(fmt_f64))
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
