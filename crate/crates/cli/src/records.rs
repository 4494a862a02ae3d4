//! CSV emission of sweep records.
//!
//! Columns are `model,alpha,x_m,metric,value_si`. The metric carries its
//! station when there is one (`f1_hz@center`). Rows are sorted by
//! (model, α, x, metric) and numbers use 17 significant digits, so files are
//! byte-stable and parse back to the exact same values.

use std::cmp::Ordering;
use std::io::{Read, Write};
use std::path::Path;

use biglide::sweep::{ModelKind, Station, SweepRecord};

use crate::IoError;

pub const HEADER: [&str; 5] = ["model", "alpha", "x_m", "metric", "value_si"];

pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

fn order(a: &SweepRecord, b: &SweepRecord) -> Ordering {
    a.model
        .cmp(&b.model)
        .then(a.alpha.total_cmp(&b.alpha))
        .then(a.x.total_cmp(&b.x))
        .then_with(|| a.qualified_metric().cmp(&b.qualified_metric()))
}

/// Records in output order.
pub fn sorted(records: &[SweepRecord]) -> Vec<SweepRecord> {
    let mut out = records.to_vec();
    out.sort_by(order);
    out
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<(), IoError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for r in sorted(records) {
        w.write_record([
            r.model.name().to_string(),
            format_number(r.alpha),
            format_number(r.x),
            r.qualified_metric(),
            format_number(r.value),
        ])?;
    }
    w.flush().map_err(|e| IoError::Csv(e.into()))?;
    Ok(())
}

pub fn emit_csv(records: &[SweepRecord], path: &Path) -> Result<(), IoError> {
    let file = std::fs::File::create(path).map_err(|e| IoError::io(path, e))?;
    write_csv(records, std::io::BufWriter::new(file))
}

fn bad(line: u64, field: &str, message: impl Into<String>) -> IoError {
    IoError::Parse {
        path: "csv".to_string(),
        line: line as usize,
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parses a file written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>, IoError> {
    let mut rd = csv::Reader::from_reader(input);
    if rd.headers()?.iter().ne(HEADER) {
        return Err(bad(1, "header", "unexpected columns"));
    }
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let num = |i: usize| -> Result<f64, IoError> {
            row[i].parse::<f64>().map_err(|e| bad(line, HEADER[i], e.to_string()))
        };
        let model = ModelKind::from_name(&row[0]).ok_or_else(|| bad(line, "model", "unknown model"))?;
        let (metric, station) = match row[3].split_once('@') {
            Some((m, s)) => (
                m,
                Some(Station::from_name(s).ok_or_else(|| bad(line, "metric", "unknown station"))?),
            ),
            None => (&row[3], None),
        };
        out.push(SweepRecord {
            model,
            alpha: num(1)?,
            x: num(2)?,
            station,
            metric: metric.to_string(),
            value: num(4)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(alpha: f64, value: f64) -> SweepRecord {
        SweepRecord {
            model: ModelKind::RefinedModal,
            alpha,
            x: 0.1 + 0.2,
            station: Some(Station::Left),
            metric: "f1_hz".into(),
            value,
        }
    }

    #[test]
    fn empty_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "model,alpha,x_m,metric,value_si\n");
    }

    #[test]
    fn one_record_two_lines() {
        let mut buf = Vec::new();
        write_csv(&[rec(1.0, 1.0 / 3.0)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.ends_with('\n'));
        assert!(text.contains("f1_hz@left"));
    }

    #[test]
    fn round_trip_is_exact_and_sorted() {
        let recs = vec![rec(1.1, 5e-300), rec(0.7, 1.0 / 7.0), rec(1.0, f64::MAX)];
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, sorted(&recs));
        assert_eq!(back[0].alpha, 0.7);
    }
}
