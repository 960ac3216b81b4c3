use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GbnnError, Result};

/// One row of a benchmark report. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub scenario: String,
    pub method: String,
    pub stored: usize,
    pub erased: usize,
    pub probes: usize,
    pub seed: u64,
    pub retrieval_rate: f64,
    pub mean_convergence_ms: f64,
    pub mean_post_ms: f64,
    /// Absent when bogus detection was switched off.
    pub bogus_rate: Option<f64>,
    /// Absent for methods without a clique search.
    pub median_recursive_calls: Option<f64>,
}

pub const REPORT_COLUMNS: [&str; 11] = [
    "scenario",
    "method",
    "stored",
    "erased",
    "probes",
    "seed",
    "retrieval_rate",
    "mean_convergence_ms",
    "mean_post_ms",
    "bogus_rate",
    "median_recursive_calls",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = GbnnError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(GbnnError::UnknownMethod(other.to_string())),
        }
    }
}

pub fn emit_report(reports: &[MethodReport], format: ReportFormat, out: impl Write) -> Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if reports.is_empty() {
                w.write_record(REPORT_COLUMNS)?;
            }
            for r in reports {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        ReportFormat::Text => {
            let mut out = out;
            writeln!(
                out,
                "{:<12} {:<24} {:>7} {:>6} {:>6} {:>8} {:>10} {:>10} {:>7} {:>10}",
                "scenario",
                "method",
                "stored",
                "erased",
                "probes",
                "rate",
                "conv_ms",
                "post_ms",
                "bogus",
                "med_calls"
            )?;
            let opt = |v: Option<f64>, prec: usize| match v {
                Some(x) => format!("{x:.prec$}"),
                None => "-".to_string(),
            };
            for r in reports {
                writeln!(
                    out,
                    "{:<12} {:<24} {:>7} {:>6} {:>6} {:>8.4} {:>10.4} {:>10.4} {:>7} {:>10}",
                    r.scenario,
                    r.method,
                    r.stored,
                    r.erased,
                    r.probes,
                    r.retrieval_rate,
                    r.mean_convergence_ms,
                    r.mean_post_ms,
                    opt(r.bogus_rate, 4),
                    opt(r.median_recursive_calls, 1),
                )?;
            }
        }
    }
    Ok(())
}

pub fn read_report(input: impl Read) -> Result<Vec<MethodReport>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(GbnnError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> MethodReport {
        MethodReport {
            scenario: "small".into(),
            method: "partite".into(),
            stored: 5000,
            erased: 6,
            probes: 100,
            seed: 7,
            retrieval_rate: 0.81,
            mean_convergence_ms: 0.123456789,
            mean_post_ms: 1.0 / 3.0,
            bogus_rate: Some(0.4),
            median_recursive_calls: None,
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let mut buf = Vec::new();
        emit_report(&[], ReportFormat::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            REPORT_COLUMNS.join(",") + "\n"
        );
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut buf = Vec::new();
        emit_report(&[row()], ReportFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().next().unwrap(), REPORT_COLUMNS.join(","));
        assert_eq!(read_report(buf.as_slice()).unwrap(), vec![row()]);
    }

    #[test]
    fn text_format_has_a_line_per_row() {
        let mut buf = Vec::new();
        emit_report(&[row(), row()], ReportFormat::Text, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 3);
    }
}
