//! Flat key-value records and CSV tables with a fixed number format.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), so identical
//! inputs give byte-identical output. Non-finite values become the strings
//! `"NaN"`, `"inf"` or `"-inf"`.

use serde_json::{Map, Number, Value};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Bool(bool),
    Str(String),
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}

impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Str(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Str(v)
    }
}

pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

impl Field {
    pub fn to_json(&self) -> Value {
        match self {
            Field::Num(x) if x.is_finite() => {
                Value::Number(format_f64(*x).parse::<Number>().expect("formatted float is valid JSON"))
            }
            Field::Num(x) => Value::String(format_f64(*x)),
            Field::Int(i) => Value::Number((*i).into()),
            Field::Bool(b) => Value::Bool(*b),
            Field::Str(s) => Value::String(s.clone()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Field::Num(x) => Some(*x),
            Field::Int(i) => Some(*i as f64),
            _ => None,
        }
    }

    fn to_cell(&self) -> String {
        match self {
            Field::Num(x) => format_f64(*x),
            Field::Int(i) => i.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Str(s) => s.clone(),
        }
    }
}

/// Ordered flat record.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    entries: Vec<(String, Field)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert or replace `key`, keeping first-insertion order.
    pub fn set(&mut self, key: impl Into<String>, value: impl Into<Field>) -> &mut Self {
        let key = key.into();
        let value = value.into();
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((key, value)),
        }
        self
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Field>) -> Self {
        self.set(key, value);
        self
    }

    /// Append every entry of `other` under `prefix.`.
    pub fn merge_prefixed(&mut self, prefix: &str, other: &Record) -> &mut Self {
        for (k, v) in &other.entries {
            self.set(format!("{prefix}.{k}"), v.clone());
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn num(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(Field::as_f64)
    }

    pub fn entries(&self) -> &[(String, Field)] {
        &self.entries
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            map.insert(k.clone(), v.to_json());
        }
        Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("records always serialize")
    }

    /// Two-line CSV: header of keys, row of values.
    pub fn to_csv(&self) -> String {
        let header: Vec<&str> = self.entries.iter().map(|(k, _)| k.as_str()).collect();
        let row: Vec<String> = self.entries.iter().map(|(_, v)| csv_escape(&v.to_cell())).collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Numeric table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width differs from the header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format_f64(*x)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut map = Map::new();
                    for (c, x) in self.columns.iter().zip(row) {
                        map.insert(c.clone(), Field::Num(*x).to_json());
                    }
                    Value::Object(map)
                })
                .collect(),
        )
    }
}
