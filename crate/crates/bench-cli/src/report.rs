//! Benchmark report and its CSV / JSON encodings.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

/// Fixed CSV header row.
pub const CSV_HEADER: &str =
    "method,family,dim,count,seed,ns_op_median,ns_op_p10,ns_op_p90,max_resid,mean_resid,failures,speedup_vs_standard";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One line of the report.
///
/// Timing rows carry the three timing fields; per-exponent residual rows
/// (family `needle:k` or `cap:k`) leave them empty. A method name with a
/// `+sqrt` suffix marks a run that takes the square root of every result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub method: String,
    pub family: String,
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    pub ns_op_median: Option<f64>,
    pub ns_op_p10: Option<f64>,
    pub ns_op_p90: Option<f64>,
    pub max_resid: Option<f64>,
    pub mean_resid: Option<f64>,
    pub failures: usize,
    pub speedup_vs_standard: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<ReportRow>,
}

impl BenchReport {
    pub fn row(&self, method: &str, family: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.method == method && r.family == family)
    }
}

// 17 significant digits: enough for every f64 to round-trip exactly
fn float(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

pub fn to_csv(report: &BenchReport) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).map_err(report_err)?;
    for r in &report.rows {
        w.write_record([
            r.method.clone(),
            r.family.clone(),
            r.dim.to_string(),
            r.count.to_string(),
            r.seed.to_string(),
            float(r.ns_op_median),
            float(r.ns_op_p10),
            float(r.ns_op_p90),
            float(r.max_resid),
            float(r.mean_resid),
            r.failures.to_string(),
            float(r.speedup_vs_standard),
        ])
        .map_err(report_err)?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Report(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| HarnessError::Report(e.to_string()))
}

pub fn parse_csv(text: &str) -> Result<BenchReport, HarnessError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(report_err)?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(HarnessError::Report(format!(
            "unexpected header `{}`",
            header.join(",")
        )));
    }
    let rows = reader
        .deserialize()
        .collect::<Result<Vec<ReportRow>, _>>()
        .map_err(report_err)?;
    Ok(BenchReport { rows })
}

pub fn to_json(report: &BenchReport) -> Result<String, HarnessError> {
    serde_json::to_string_pretty(report).map_err(|e| HarnessError::Report(e.to_string()))
}

pub fn parse_json(text: &str) -> Result<BenchReport, HarnessError> {
    serde_json::from_str(text).map_err(|e| HarnessError::Report(e.to_string()))
}

pub fn emit_report(report: &BenchReport, format: OutputFormat) -> Result<String, HarnessError> {
    match format {
        OutputFormat::Csv => to_csv(report),
        OutputFormat::Json => to_json(report),
    }
}

fn report_err(e: csv::Error) -> HarnessError {
    HarnessError::Report(e.to_string())
}
