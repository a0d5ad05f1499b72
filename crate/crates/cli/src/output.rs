//! Output sinks. Every run writes either one JSON document
//! `{"meta": {...}, "data": [...]}` or one CSV table with a header row.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Explicit `--format`, else the output file's extension, else `default`.
pub fn resolve_format(explicit: Option<Format>, out: Option<&Path>, default: Format) -> Format {
    explicit
        .or_else(|| match out?.extension()?.to_str()? {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        })
        .unwrap_or(default)
}

#[derive(Serialize)]
pub struct Meta {
    pub command: &'static str,
    pub flags: Value,
    pub version: &'static str,
    /// `SOURCE_DATE_EPOCH` when set; otherwise null, so that identical
    /// flags give byte-identical output.
    pub timestamp: Option<u64>,
}

impl Meta {
    pub fn new<T: Serialize>(command: &'static str, flags: &T) -> Meta {
        Meta {
            command,
            flags: serde_json::to_value(flags).expect("flags serialize"),
            version: env!("CARGO_PKG_VERSION"),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok()),
        }
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    meta: &'a Meta,
    data: &'a [T],
}

fn sink(out: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Io(p.display().to_string(), e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(out: Option<&PathBuf>, e: io::Error) -> CliError {
    CliError::Io(out.map_or_else(|| "stdout".into(), |p| p.display().to_string()), e)
}

pub fn write_json<T: Serialize>(out: Option<&PathBuf>, meta: &Meta, data: &[T]) -> Result<(), CliError> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, &Document { meta, data }).map_err(|e| io_err(out, e.into()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| io_err(out, e))
}

/// Floats with 17 significant digits, so they read back bit-identically.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

pub fn write_csv(out: Option<&PathBuf>, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let w = sink(out)?;
    let mut wr = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| io_err(out, e.into());
    wr.write_record(header).map_err(csv_err)?;
    for r in rows {
        wr.write_record(r).map_err(csv_err)?;
    }
    wr.flush().map_err(|e| io_err(out, e))
}

/// A structured warning on stderr, one JSON object per line.
pub fn warn(event: &str, detail: Value) {
    let line = serde_json::json!({ "level": "warn", "event": event, "detail": detail });
    eprintln!("{line}");
}
