use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Decided,
    Inconclusive,
    NumericalFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Decided => 0,
            Status::Inconclusive => 2,
            Status::NumericalFailure => 3,
        }
    }

    pub fn worst(self, other: Status) -> Status {
        if other.exit_code() > self.exit_code() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Audit {
    /// "mpfr" or "f64".
    pub arithmetic: &'static str,
    pub digits: u32,
    pub tolerance: f64,
    /// Largest estimated loss to cancellation, in decimal digits.
    pub max_digits_lost: f64,
}

/// Flat table for CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Result of one subcommand before it is written out.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub audit: Audit,
    pub results: Value,
    pub table: Table,
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize> {
    schema_version: u32,
    command: &'a str,
    version: &'a str,
    config: &'a C,
    status: Status,
    precision: &'a Audit,
    results: &'a Value,
}

pub fn write<C: Serialize>(
    command: &str,
    config: &C,
    out: &Outcome,
    format: Format,
    path: Option<&Path>,
) -> Result<()> {
    let mut sink: Box<dyn Write> = match path {
        Some(p) => {
            Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command,
                version: env!("CARGO_PKG_VERSION"),
                config,
                status: out.status,
                precision: &out.audit,
                results: &out.results,
            };
            serde_json::to_writer_pretty(&mut sink, &env)?;
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            w.write_record(&out.table.header)?;
            for r in &out.table.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    sink.flush()?;
    Ok(())
}

/// `Option<f64>` as a CSV cell.
pub fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
