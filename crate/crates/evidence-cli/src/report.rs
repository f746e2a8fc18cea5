//! One computed result, rendered as text, CSV, or JSON from a single
//! structure — the three formats can never drift apart.
//!
//! JSON output is an `OutputRecord`: `{schema_version, command, payload}`
//! with stable key order (field insertion order). Infinite ratios are
//! spelled as the strings `"inf"`/`"-inf"` because JSON has no literal for
//! them; all finite floats use Rust's shortest round-trip form.

use serde_json::{Map, Number, Value as Json};

/// Version stamped into every JSON record.
pub const SCHEMA_VERSION: u64 = 1;

/// One field or cell value.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
}

impl Scalar {
    /// Canonical text form, shared by the text and CSV renderers.
    pub fn render(&self) -> String {
        match self {
            Scalar::Null => "none".into(),
            Scalar::Bool(b) => b.to_string(),
            Scalar::Int(i) => i.to_string(),
            Scalar::UInt(u) => u.to_string(),
            Scalar::Float(x) => render_float(*x),
            Scalar::Str(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Scalar::Null => Json::Null,
            Scalar::Bool(b) => Json::Bool(*b),
            Scalar::Int(i) => Json::Number((*i).into()),
            Scalar::UInt(u) => Json::Number((*u).into()),
            Scalar::Float(x) => {
                if x.is_finite() {
                    Json::Number(Number::from_f64(*x).expect("finite float"))
                } else {
                    Json::String(render_float(*x))
                }
            }
            Scalar::Str(s) => Json::String(s.clone()),
        }
    }
}

/// Shortest round-trip decimal; infinities spelled out.
pub fn render_float(x: f64) -> String {
    debug_assert!(!x.is_nan(), "reports never carry NaN");
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

/// A rectangular block of results.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Scalar>>,
}

/// A command's complete result: named fields in order, plus an optional table.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub fields: Vec<(String, Scalar)>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Vec::new(),
            table: None,
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: Scalar) {
        self.fields.push((key.into(), value));
    }

    /// `key: value` lines, then the table with space-padded columns.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.fields {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(&value.render());
            out.push('\n');
        }
        if let Some(table) = &self.table {
            if !self.fields.is_empty() {
                out.push('\n');
            }
            let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
            let rendered: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|row| row.iter().map(Scalar::render).collect())
                .collect();
            for row in &rendered {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let emit = |cells: &[String], out: &mut String| {
                for (i, cell) in cells.iter().enumerate() {
                    if i + 1 == cells.len() {
                        out.push_str(cell);
                    } else {
                        out.push_str(cell);
                        for _ in cell.chars().count()..widths[i] + 2 {
                            out.push(' ');
                        }
                    }
                }
                out.push('\n');
            };
            emit(&table.headers, &mut out);
            for row in &rendered {
                emit(row, &mut out);
            }
        }
        out
    }

    /// The table as RFC-quoted CSV; field/value rows when there is no table.
    pub fn render_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(table) => {
                writer
                    .write_record(&table.headers)
                    .expect("in-memory CSV write");
                for row in &table.rows {
                    writer
                        .write_record(row.iter().map(|c| c.render()))
                        .expect("in-memory CSV write");
                }
            }
            None => {
                writer
                    .write_record(["field", "value"])
                    .expect("in-memory CSV write");
                for (key, value) in &self.fields {
                    writer
                        .write_record([key.clone(), value.render()])
                        .expect("in-memory CSV write");
                }
            }
        }
        String::from_utf8(writer.into_inner().expect("in-memory CSV flush"))
            .expect("CSV output is UTF-8")
    }

    /// The full `OutputRecord` as one JSON line.
    pub fn render_json(&self) -> String {
        let mut payload = Map::new();
        for (key, value) in &self.fields {
            payload.insert(key.clone(), value.to_json());
        }
        if let Some(table) = &self.table {
            let rows: Vec<Json> = table
                .rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (header, cell) in table.headers.iter().zip(row) {
                        obj.insert(header.clone(), cell.to_json());
                    }
                    Json::Object(obj)
                })
                .collect();
            payload.insert("table".into(), Json::Array(rows));
        }
        let mut record = Map::new();
        record.insert("schema_version".into(), Json::Number(SCHEMA_VERSION.into()));
        record.insert("command".into(), Json::String(self.command.into()));
        record.insert("payload".into(), Json::Object(payload));
        let mut line = serde_json::to_string(&Json::Object(record)).expect("JSON serialization");
        line.push('\n');
        line
    }
}
