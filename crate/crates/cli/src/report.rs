use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Result of one command in all three renderings.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub results: Value,
    pub table: String,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    /// An `--expect-*` check that did not hold.
    pub expectation_failed: bool,
}

impl Report {
    pub fn new(command: &'static str, params: Value, results: Value) -> Self {
        Report {
            command,
            params,
            results,
            table: String::new(),
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            expectation_failed: false,
        }
    }

    pub fn table(mut self, text: String) -> Self {
        self.table = text;
        self
    }

    pub fn csv<H: ToString>(mut self, header: &[H], rows: Vec<Vec<String>>) -> Self {
        self.csv_header = header.iter().map(ToString::to_string).collect();
        self.csv_rows = rows;
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "params": self.params,
            "results": self.results,
        })
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Table => {
                out.write_all(self.table.as_bytes())?;
                if !self.table.ends_with('\n') {
                    out.write_all(b"\n")?;
                }
                Ok(())
            }
            Format::Json => {
                // serde_json maps are ordered by key, so re-rendering a parsed
                // report reproduces it byte for byte
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                out.write_all(b"\n")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.csv_header)?;
                for row in &self.csv_rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}
