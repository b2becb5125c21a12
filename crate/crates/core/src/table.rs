//! Rectangular result sets with CSV and JSON serialization.
//!
//! Every value is rendered once, at insertion time, to a decimal string:
//! floats with 17 significant digits (`{:.16e}`), which round-trips binary64,
//! and exact rationals as `num/den`. Both output formats carry exactly these
//! strings, so CSV and JSON agree and repeated runs are byte-identical.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// A single table value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// 17 significant digits; non-finite values use the IEEE names.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
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

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub version: String,
    pub timestamp: String,
}

impl Metadata {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanTable {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ScanTable {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            metadata: Metadata::new(command),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_parameter(&mut self, key: &str, value: impl ToString) {
        self.metadata.parameters.insert(key.to_string(), value.to_string());
    }

    /// Appends a row; its length must match the header.
    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidIdentity(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row.iter().map(Cell::render).collect());
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of one column, as rendered.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    /// RFC 4180 CSV: header row then data rows. Metadata is not included.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }

    /// `{metadata, columns, rows}` as pretty JSON.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_and_shape() {
        let mut t = ScanTable::new("demo", &["n", "value", "note"]);
        t.push(vec![3u64.into(), 0.1.into(), "a,b".into()]).unwrap();
        assert!(t.push(vec![1u64.into()]).is_err());
        let csv = t.to_csv_string();
        assert_eq!(csv, "n,value,note\r\n3,1.0000000000000001e-1,\"a,b\"\r\n");
        let v: f64 = t.rows[0][1].parse().unwrap();
        assert_eq!(v, 0.1);
        let json: serde_json::Value = serde_json::from_str(&t.to_json_string()).unwrap();
        assert_eq!(json["columns"][1], "value");
        assert_eq!(json["metadata"]["command"], "demo");
    }
}
