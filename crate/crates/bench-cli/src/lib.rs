//! Input generation, verification and timing harness for the `circumsphere`
//! crate, plus CSV/JSON reporting.

pub mod bench;
pub mod config;
pub mod dispatch;
pub mod generate;
pub mod input;
pub mod report;

use std::path::PathBuf;

use circumsphere::GeometryError;
use thiserror::Error;

pub use bench::{run_bench, run_suite, sqrt_share, TimingStats};
pub use config::{BenchConfig, Family, Method};
pub use generate::{generate_inputs, Batch};
pub use report::{emit_report, parse_csv, BenchReport, OutputFormat, ReportRow, CSV_HEADER};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Geometry(#[from] GeometryError),

    #[error("report: {0}")]
    Report(String),
}

impl HarnessError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Geometry(e) if e.is_degenerate() => 3,
            HarnessError::Report(_) => 1,
            _ => 2,
        }
    }
}
