//! Flat records written as CSV (header once) or JSON lines.

use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

/// Floats are written with 17 significant digits so that they re-parse to
/// the identical double.
pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_f64(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(t) => t.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_f64(*v),
            Cell::Num(v) => serde_json::Value::from(format_f64(*v)).to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(t) => serde_json::Value::from(t.as_str()).to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
}

pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    header: Option<Vec<&'static str>>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Self {
            out,
            format,
            header: None,
        }
    }

    /// Write one record. Column order must be the same for every record.
    pub fn write(&mut self, record: &[(&'static str, Cell)]) -> io::Result<()> {
        let names: Vec<&'static str> = record.iter().map(|(n, _)| *n).collect();
        match self.format {
            Format::Csv => {
                match &self.header {
                    None => {
                        writeln!(self.out, "{}", names.join(","))?;
                        self.header = Some(names);
                    }
                    Some(h) => debug_assert_eq!(h, &names, "column order changed mid-stream"),
                }
                let row: Vec<String> = record.iter().map(|(_, c)| c.csv()).collect();
                writeln!(self.out, "{}", row.join(","))
            }
            Format::JsonLines => {
                let fields: Vec<String> = record
                    .iter()
                    .map(|(n, c)| format!("{}:{}", serde_json::Value::from(*n), c.json()))
                    .collect();
                writeln!(self.out, "{{{}}}", fields.join(","))
            }
        }
    }

    /// Trailing summary: a `#`-prefixed key=value line in CSV, an object
    /// under the key "summary" in JSON lines.
    pub fn summary(&mut self, record: &[(&'static str, Cell)]) -> io::Result<()> {
        match self.format {
            Format::Csv => {
                let parts: Vec<String> = record.iter().map(|(n, c)| format!("{n}={}", c.csv())).collect();
                writeln!(self.out, "# {}", parts.join(","))
            }
            Format::JsonLines => {
                let fields: Vec<String> = record
                    .iter()
                    .map(|(n, c)| format!("{}:{}", serde_json::Value::from(*n), c.json()))
                    .collect();
                writeln!(self.out, "{{\"summary\":{{{}}}}}", fields.join(","))
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
