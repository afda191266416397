//! Command output: one JSON document and one CSV table per report.

use clap::ValueEnum;
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Result of a command. `passed` is false when a check inside the command
/// failed; the report is still written in that case.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub passed: bool,
    pub default_format: Format,
}

impl Report {
    pub fn render(&self, format: Option<Format>) -> CliResult<String> {
        match format.unwrap_or(self.default_format) {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| CliError::Csv(e.into_error().into()))?;
                Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
            }
        }
    }
}

/// Shortest decimal that reads back to the same `f64`, as in the JSON
/// output. Non-finite values become `null`.
pub fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("f64 serializes")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
