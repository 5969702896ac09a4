//! Column-oriented result tables with CSV and JSON writers.
//!
//! Reals are written with 17 significant digits in CSV (lossless for
//! `f64`) and as shortest round-trip numbers in JSON. NaN marks a missing
//! value: `NaN` in CSV, `null` in JSON.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
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

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Real(x) => Some(*x),
            Cell::Text(_) => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) if x.is_nan() => "NaN".to_string(),
            Cell::Real(x) => format!("{x:.16e}"),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Real(x) if x.is_finite() => json!(x),
            Cell::Real(_) => Value::Null,
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics on a width mismatch, which is a programming error.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_csv).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// `{"columns": [...], "rows": [[...], ...]}`, keeping column order.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({ "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    /// Parses CSV written by [`Table::to_csv`]. Fields that parse as
    /// integers become `Int`, as floats `Real`, everything else `Text`.
    pub fn from_csv(text: &str) -> Result<Table> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty CSV".into()))?;
        let mut table = Table::new(split_csv_line(header));
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields = split_csv_line(line);
            if fields.len() != table.columns.len() {
                return Err(Error::InvalidParameter(format!(
                    "CSV row {} has {} fields, expected {}",
                    i + 1,
                    fields.len(),
                    table.columns.len()
                )));
            }
            table.push(fields.into_iter().map(parse_field).collect());
        }
        Ok(table)
    }

    /// Parses JSON written by [`Table::to_json`]; `null` becomes NaN.
    pub fn from_json(text: &str) -> Result<Table> {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("JSON table: {e}")))?;
        let bad = || Error::InvalidParameter("JSON table must have columns and rows arrays".into());
        let columns: Vec<String> = doc["columns"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let mut table = Table::new(columns);
        for row in doc["rows"].as_array().ok_or_else(bad)? {
            let cells = row
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|v| match v {
                    Value::Null => Ok(Cell::Real(f64::NAN)),
                    Value::String(s) => Ok(Cell::Text(s.clone())),
                    Value::Number(n) if n.is_i64() => Ok(Cell::Int(n.as_i64().unwrap())),
                    Value::Number(n) => Ok(Cell::Real(n.as_f64().unwrap())),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?;
            if cells.len() != table.columns.len() {
                return Err(bad());
            }
            table.push(cells);
        }
        Ok(table)
    }
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    fields.push(cur);
    fields
}

fn parse_field(s: String) -> Cell {
    if let Ok(i) = s.parse::<i64>() {
        Cell::Int(i)
    } else if let Ok(x) = s.parse::<f64>() {
        Cell::Real(x)
    } else {
        Cell::Text(s)
    }
}
