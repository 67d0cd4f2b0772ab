//! Tabular output shared by every experiment: CSV with a fixed number format
//! and a JSON envelope.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Result;

/// Shortest round-trip decimal, switching to scientific notation below 1e-4.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v != 0.0 && v.abs() < 1e-4 {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => json!(i),
            // JSON has no inf/nan; those become strings
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => Value::String(format_float(*v)),
            Cell::Missing => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }
}

impl From<Option<&str>> for Cell {
    fn from(v: Option<&str>) -> Self {
        v.map_or(Cell::Missing, Cell::from)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert(c.clone(), v.json());
                }
                Value::Object(m)
            })
            .collect()
    }
}

/// One reference constant quoted in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceEntry {
    pub name: String,
    pub expression: String,
    pub value: f64,
}

/// `{command, seed, params, rows, references, wall_time_s}`, plus an optional
/// `summary` object for scalar results such as a KS distance.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: Option<u64>,
    pub params: Value,
    pub table: Table,
    pub references: Vec<ReferenceEntry>,
    pub summary: Option<Value>,
    pub wall_time_s: f64,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        let refs: Vec<Value> = self
            .references
            .iter()
            .map(|r| json!({"name": r.name, "expression": r.expression, "value": r.value}))
            .collect();
        let mut v = json!({
            "command": self.command,
            "seed": self.seed,
            "params": self.params,
            "rows": self.table.json_rows(),
            "references": refs,
            "wall_time_s": self.wall_time_s,
        });
        if let Some(summary) = &self.summary {
            v["summary"] = summary.clone();
        }
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(2.5e-5), "2.5e-5");
        assert_eq!(format_float(-3e-7), "-3e-7");
        assert_eq!(format_float(0.0001), "0.0001");
        assert_eq!(format_float(f64::INFINITY), "inf");
        // round trip
        let x = 0.1 + 0.2;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["label", "n", "mean", "ref"]);
        t.push(vec!["a,b".into(), 3usize.into(), 0.25.into(), Cell::Missing]);
        let csv = t.to_csv().unwrap();
        assert_eq!(csv, "label,n,mean,ref\n\"a,b\",3,0.25,\n");
        let rows = t.json_rows();
        assert_eq!(rows[0]["n"], json!(3));
        assert!(rows[0]["ref"].is_null());
    }
}
