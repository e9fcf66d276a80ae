//! CSV and JSON tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Columns of numbers plus a metadata record. Missing values are NaN and
/// are written as `NaN` in CSV and `null` in JSON.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub metadata: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(command: &str, params: Value, columns: Vec<&'static str>) -> Self {
        Table {
            metadata: json!({
                "tool": "egoe",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "params": params,
            }),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        w.flush()
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        w.flush()
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let sink: Box<dyn Write> = match out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        match format {
            Format::Csv => self.write_csv(sink),
            Format::Json => self.write_json(sink),
        }
    }
}

/// 17 significant digits, so every value round-trips.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.16e}")
    }
}
