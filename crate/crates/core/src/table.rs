//! Tabular output in CSV, JSON and aligned plain text.
//!
//! Machine formats print floats with 17 significant digits (`{:.16e}`),
//! which round-trips every finite `f64`. JSON output is a single object
//! with a `"rows"` array whose objects use the CSV column names as keys.

use crate::error::Error;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Pretty,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "pretty" => Ok(OutputFormat::Pretty),
            other => Err(Error::InvalidArgument(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

/// 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl Cell {
    fn machine(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_f64(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Float(x) if !x.is_finite() => "null".into(),
            Cell::Text(s) => json_string(s),
            other => other.machine(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Float(x) => {
                let a = x.abs();
                if *x == 0.0 || (1e-4..1e6).contains(&a) {
                    format!("{x:.12}")
                } else {
                    format!("{x:.6e}")
                }
            }
            other => other.machine(),
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Free-text lines shown above the pretty table only.
    pub notes: Vec<String>,
    /// Extra top-level fields of the JSON object; shown as `key: value`
    /// lines below the pretty table.
    pub summary: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn summarize(&mut self, key: impl Into<String>, value: Cell) {
        self.summary.push((key.into(), value));
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Pretty => self.to_pretty(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| csv_field(c)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_field(&c.machine())).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        for (key, value) in &self.summary {
            let _ = write!(out, "{}:{},", json_string(key), value.json());
        }
        out.push_str("\"rows\":[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('{');
            for (k, (col, cell)) in self.columns.iter().zip(row).enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}:{}", json_string(col), cell.json());
            }
            out.push('}');
        }
        out.push_str("]}\n");
        out
    }

    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::pretty).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(k, c)| cells.iter().map(|r| r[k].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for note in &self.notes {
            let _ = writeln!(out, "# {note}");
        }
        let line = |fields: &[String]| {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(out, "{}", line(&self.columns));
        for row in &cells {
            let _ = writeln!(out, "{}", line(row));
        }
        for (key, value) in &self.summary {
            let _ = writeln!(out, "{key}: {}", value.pretty());
        }
        out
    }
}
