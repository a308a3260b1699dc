//! CSV and JSON writers shared by the CLI and the examples.
//!
//! CSV output starts with `#`-prefixed metadata lines, then one header row.
//! JSON output is a single object `{config, results, diagnostics}`.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::sampler::PointConfiguration;

/// A column-oriented numeric or textual table.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
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

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Num(v) => write!(f, "{v}"),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rows as JSON objects keyed by column name.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let m = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.clone(), serde_json::to_value(v).unwrap_or(Value::Null)))
                        .collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }
}

pub fn write_csv(out: &mut dyn Write, meta: &[(String, String)], table: &Table) -> std::io::Result<()> {
    for (k, v) in meta {
        writeln!(out, "# {k}: {v}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|c| c.to_string()))?;
    }
    w.flush()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub config: Value,
    pub results: Value,
    pub diagnostics: Value,
}

pub fn write_json(out: &mut dyn Write, report: &JsonReport) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, report)?;
    writeln!(out)
}

/// One row per point: value, config_id.
pub fn configurations_table(configs: &[PointConfiguration]) -> Table {
    let mut t = Table::new(&["value", "config_id"]);
    for (id, c) in configs.iter().enumerate() {
        for &x in &c.points {
            t.push(vec![x.into(), id.into()]);
        }
    }
    t
}

/// Parse the CSV written by [`write_csv`] back into a header and rows of text.
pub fn read_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = r.headers().map(|h| h.iter().map(str::to_string).collect()).unwrap_or_default();
    let rows = r
        .records()
        .filter_map(|rec| rec.ok())
        .map(|rec| rec.iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}
