//! CSV and JSON output. Floats are written with 17 significant digits so
//! that reports parse back to the exact same values.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid_input, Error, Result};

use super::{ScatterRecord, SweepReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(invalid_input(format!("unknown report format '{other}'"))),
        }
    }
}

fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_owned()
    } else if x > 0.0 {
        "inf".to_owned()
    } else {
        "-inf".to_owned()
    }
}

/// Compact JSON with fixed-precision floats. Non-finite floats become `null`.
struct PreciseFormatter;

impl serde_json::ser::Formatter for PreciseFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes utf-8"))
}

pub fn records_to_csv(records: &[ScatterRecord]) -> String {
    let mut out = String::from("trial,model,p1,q1,margin,seed\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}:{}",
            r.trial_index,
            r.model,
            fmt_f64(r.p1),
            fmt_f64(r.q1),
            fmt_f64(r.margin()),
            r.seed.seed,
            r.seed.stream_id
        );
    }
    out
}

pub fn sweep_to_csv(report: &SweepReport) -> String {
    let mut out = String::from("group,trials,violations,worst_margin\n");
    for g in &report.groups {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            g.label,
            g.trials,
            g.violations,
            fmt_f64(g.worst_margin)
        );
    }
    let _ = writeln!(
        out,
        "all,{},{},{}",
        report.trials,
        report.violations,
        fmt_f64(report.worst_margin)
    );
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn emit_records(records: &[ScatterRecord], path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => records_to_csv(records),
        ReportFormat::Json => to_json_string(records)?,
    };
    write_file(path, &text)
}

pub fn emit_sweep(report: &SweepReport, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => sweep_to_csv(report),
        ReportFormat::Json => to_json_string(report)?,
    };
    write_file(path, &text)
}

pub fn parse_records_json(text: &str) -> Result<Vec<ScatterRecord>> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngSeed;

    fn record(i: u64, p1: f64, q1: f64) -> ScatterRecord {
        ScatterRecord {
            trial_index: i,
            model: "stirap_theta".into(),
            p1,
            q1,
            seed: RngSeed::new(7, i),
        }
    }

    #[test]
    fn csv_line_counts() {
        assert_eq!(records_to_csv(&[]), "trial,model,p1,q1,margin,seed\n");
        let rs: Vec<_> = (0..3).map(|i| record(i, 0.6, 0.5)).collect();
        let csv = records_to_csv(&rs);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(2).unwrap().ends_with(",7:1"));
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(1.0 / 3.0).parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(
            to_json_string(&[0.1f64, f64::INFINITY]).unwrap(),
            "[1.0000000000000001e-1,null]\n"
        );
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rs = vec![
            record(0, 0.7310585786300049, 0.6),
            record(1, 1.0 / 3.0, 0.1 + 0.2),
            record(2, 0.999999999999999, 5e-324),
        ];
        let text = to_json_string(&rs).unwrap();
        assert_eq!(parse_records_json(&text).unwrap(), rs);
    }

    #[test]
    fn io_errors_carry_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.csv");
        match emit_records(&[], &path, ReportFormat::Csv) {
            Err(Error::Io { path: p, .. }) => assert_eq!(p, path),
            other => panic!("unexpected {other:?}"),
        }
        let ok = dir.path().join("out.json");
        emit_records(&[record(0, 0.5, 0.5)], &ok, ReportFormat::Json).unwrap();
        assert_eq!(parse_records_json(&fs::read_to_string(ok).unwrap()).unwrap().len(), 1);
    }
}
