//! Report assembly and CSV/JSON output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA: u32 = 1;

/// The run parameters echoed into JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunSpec {
    pub command: String,
    pub data: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decision: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<String>,
    pub bins: usize,
    pub thresholds: Vec<(String, String)>,
    pub target: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub format: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub spec: RunSpec,
    pub records: Vec<Map<String, Value>>,
}

/// Serializes a record struct into an ordered JSON object.
pub fn record<T: Serialize>(value: &T) -> Map<String, Value> {
    match serde_json::to_value(value).expect("records serialize") {
        Value::Object(map) => map,
        other => panic!("record is not an object: {other}"),
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn write_csv<W: Write>(report: &Report, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = report.records.first() {
        let header = std::iter::once("schema").chain(first.keys().map(String::as_str));
        w.write_record(header)?;
        for rec in &report.records {
            let row = std::iter::once(SCHEMA.to_string()).chain(rec.values().map(cell));
            w.write_record(row)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_json<W: Write>(report: &Report, mut out: W) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Doc<'a> {
        schema: u32,
        spec: &'a RunSpec,
        records: &'a [Map<String, Value>],
    }
    let doc = Doc {
        schema: SCHEMA,
        spec: &report.spec,
        records: &report.records,
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn write(report: &Report, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Io(format!("cannot create {}: {e}", p.display()))
            })?))
        }
        None => Box::new(std::io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(report, sink),
        Format::Json => write_json(report, sink),
    }
}
