//! Reports and their JSON / CSV encodings.

use crate::constants::Estimate;
use crate::Q;
use serde_json::{Map, Number, Value};
use std::fmt::Write as _;
use std::str::FromStr;

pub const SCHEMA: &str = "delpezzo/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i128),
    Float(f64),
    Text(String),
    Rational(Q),
    Estimate(Estimate),
    Bool(bool),
    Null,
}

impl From<i128> for Field {
    fn from(v: i128) -> Self {
        Field::Int(v)
    }
}
impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i128)
    }
}
impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(v as i128)
    }
}
impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Int(v as i128)
    }
}
impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i128)
    }
}
impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}
impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}
impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}
impl From<Q> for Field {
    fn from(v: Q) -> Self {
        Field::Rational(v)
    }
}
impl From<Estimate> for Field {
    fn from(v: Estimate) -> Self {
        Field::Estimate(v)
    }
}
impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}
impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map_or(Field::Null, Into::into)
    }
}

/// Ordered key/value pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Field)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn to_json(&self) -> Map<String, Value> {
        self.0.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()
    }

    /// Column names and cells, estimates split into value and bar.
    fn to_csv(&self) -> (Vec<String>, Vec<String>) {
        let mut names = Vec::new();
        let mut cells = Vec::new();
        for (k, v) in &self.0 {
            match v {
                Field::Estimate(e) => {
                    names.push(k.clone());
                    cells.push(float17(e.value));
                    names.push(format!("{k}_error_bar"));
                    cells.push(float17(e.error_bar));
                }
                other => {
                    names.push(k.clone());
                    cells.push(other.to_text());
                }
            }
        }
        (names, cells)
    }
}

/// A command's output: configuration, summary fields and optional rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub config: Record,
    pub summary: Record,
    pub rows: Vec<Record>,
}

/// 17 significant digits, which round-trip any `f64`.
pub fn float17(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    format!("{x:.16e}")
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Int(v) => Value::Number(Number::from_str(&v.to_string()).expect("integer literal")),
            Field::Float(x) => float_json(*x),
            Field::Text(s) => Value::String(s.clone()),
            Field::Rational(q) => Value::String(format_q(*q)),
            Field::Estimate(e) => {
                let mut m = Map::new();
                m.insert("value".into(), float_json(e.value));
                m.insert("error_bar".into(), float_json(e.error_bar));
                Value::Object(m)
            }
            Field::Bool(b) => Value::Bool(*b),
            Field::Null => Value::Null,
        }
    }

    fn to_text(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Float(x) => float17(*x),
            Field::Text(s) => s.clone(),
            Field::Rational(q) => format_q(*q),
            Field::Estimate(e) => float17(e.value),
            Field::Bool(b) => b.to_string(),
            Field::Null => String::new(),
        }
    }
}

fn float_json(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&float17(x)).expect("float literal"))
    } else {
        Value::Null
    }
}

pub fn format_q(q: Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    let mut line = cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

impl Report {
    pub fn new(command: &'static str, config: Record) -> Self {
        Report { command, config, summary: Record::new(), rows: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("schema".into(), Value::String(SCHEMA.into()));
        m.insert("command".into(), Value::String(self.command.into()));
        m.insert("config".into(), Value::Object(self.config.to_json()));
        for (k, v) in self.summary.to_json() {
            m.insert(k, v);
        }
        if !self.rows.is_empty() {
            m.insert("rows".into(), Value::Array(self.rows.iter().map(|r| Value::Object(r.to_json())).collect()));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serialisable");
        s.push('\n');
        s
    }

    /// Rows if there are any, otherwise the summary as a single row.
    pub fn to_csv(&self) -> String {
        let records: Vec<&Record> = if self.rows.is_empty() { vec![&self.summary] } else { self.rows.iter().collect() };
        let mut out = String::new();
        for (i, r) in records.iter().enumerate() {
            let (names, cells) = r.to_csv();
            if i == 0 {
                out.push_str(&csv_line(&names));
            }
            out.push_str(&csv_line(&cells));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Human-readable one-line summary of each row, for stderr.
pub fn describe(rec: &Record) -> String {
    let mut s = String::new();
    for (i, (k, v)) in rec.0.iter().enumerate() {
        if i > 0 {
            s.push_str("  ");
        }
        let _ = write!(s, "{k}={}", v.to_text());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_use_seventeen_digits() {
        assert_eq!(float17(0.1), "1.0000000000000001e-1");
        assert_eq!(float17(1.0), "1.0000000000000000e0");
        for x in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-300] {
            assert_eq!(float17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_keeps_key_order_and_digits() {
        let mut r = Report::new("demo", Record::new().with("seed", 7u64).with("alpha", 0.5));
        r.summary.push("z_last", Q::new(1, 36));
        r.summary.push("a_first", Estimate::new(1.0 / 3.0, 1e-3));
        let s = r.to_json();
        let keys: Vec<usize> = ["\"schema\"", "\"command\"", "\"config\"", "\"z_last\"", "\"a_first\""]
            .iter()
            .map(|k| s.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains("3.3333333333333331e-1"));
        assert!(s.contains("\"1/36\""));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["config"]["seed"], 7);
    }

    #[test]
    fn csv_quotes_and_splits_estimates() {
        let mut r = Report::new("demo", Record::new());
        r.rows.push(Record::new().with("name", "a,b").with("x", Estimate::new(2.0, 0.5)));
        r.rows.push(Record::new().with("name", "say \"hi\"").with("x", Estimate::new(3.0, 0.25)));
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "name,x,x_error_bar");
        assert_eq!(lines[1], "\"a,b\",2.0000000000000000e0,5.0000000000000000e-1");
        assert_eq!(lines[2], "\"say \"\"hi\"\"\",3.0000000000000000e0,2.5000000000000000e-1");
    }
}
