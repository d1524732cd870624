//! Flat output tables with CSV and JSON encodings.
//!
//! Complex columns are split into `<name>_re` / `<name>_im`. CSV floats use
//! 17 significant digits; JSON floats use the shortest round-trip form.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }

    fn from_csv(field: &str) -> Self {
        if field.is_empty() {
            Cell::Empty
        } else if let Ok(v) = field.parse::<i64>() {
            Cell::Int(v)
        } else if let Ok(v) = field.parse::<f64>() {
            Cell::Real(v)
        } else if let Ok(v) = field.parse::<bool>() {
            Cell::Bool(v)
        } else {
            Cell::Text(field.to_string())
        }
    }

    fn from_json(v: &Value) -> Self {
        match v {
            Value::Null => Cell::Empty,
            Value::Bool(b) => Cell::Bool(*b),
            Value::Number(n) => match n.as_i64() {
                Some(i) if !n.is_f64() => Cell::Int(i),
                _ => Cell::Real(n.as_f64().unwrap_or(f64::NAN)),
            },
            Value::String(s) => Cell::Text(s.clone()),
            other => Cell::Text(other.to_string()),
        }
    }

    /// Numeric view used when comparing parsed tables.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Real(v) => Some(*v),
            _ => None,
        }
    }
}

/// Row builder that keeps cells in column order.
#[derive(Debug, Default)]
pub struct Row(Vec<Cell>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn int(mut self, v: impl Into<i64>) -> Self {
        self.0.push(Cell::Int(v.into()));
        self
    }

    pub fn real(mut self, v: f64) -> Self {
        self.0.push(Cell::Real(if v == 0.0 { 0.0 } else { v }));
        self
    }

    pub fn complex(self, z: Complex64) -> Self {
        self.real(z.re).real(z.im)
    }

    pub fn bool(mut self, v: bool) -> Self {
        self.0.push(Cell::Bool(v));
        self
    }

    /// An empty string becomes an empty cell.
    pub fn text(mut self, s: impl Into<String>) -> Self {
        let s = s.into();
        self.0.push(if s.is_empty() { Cell::Empty } else { Cell::Text(s) });
        self
    }

    pub fn opt_real(self, v: Option<f64>) -> Self {
        match v {
            Some(v) => self.real(v),
            None => self.empty(1),
        }
    }

    pub fn opt_int(self, v: Option<i64>) -> Self {
        match v {
            Some(v) => self.int(v),
            None => self.empty(1),
        }
    }

    pub fn opt_complex(self, z: Option<Complex64>) -> Self {
        match z {
            Some(z) => self.complex(z),
            None => self.empty(2),
        }
    }

    pub fn empty(mut self, count: usize) -> Self {
        self.0.extend(std::iter::repeat(Cell::Empty).take(count));
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// Column list where names ending in `*` expand to `_re` / `_im` pairs.
pub fn columns(spec: &[&str]) -> Vec<String> {
    spec.iter()
        .flat_map(|c| match c.strip_suffix('*') {
            Some(base) => vec![format!("{base}_re"), format!("{base}_im")],
            None => vec![c.to_string()],
        })
        .collect()
}

impl Table {
    pub fn new(spec: &[&str]) -> Self {
        Self {
            columns: columns(spec),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Row) {
        assert_eq!(row.0.len(), self.columns.len(), "row width does not match the header");
        self.rows.push(row.0);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Cells of one column, in row order.
    pub fn values(&self, name: &str) -> Vec<&Cell> {
        match self.column(name) {
            Some(k) => self.rows.iter().map(|r| &r[k]).collect(),
            None => Vec::new(),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self, CliError> {
        let mut r = csv::Reader::from_reader(input);
        let columns = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(Cell::from_csv).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { columns, rows })
    }

    pub fn to_json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::to_json))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_json<W: Write, P: Serialize>(&self, out: W, meta: &Meta<P>) -> Result<(), CliError> {
        let doc = json!({ "meta": meta, "rows": self.to_json_rows() });
        let mut out = out;
        serde_json::to_writer_pretty(&mut out, &doc)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// Parses the `rows` array of a JSON document written by [`Table::write_json`].
    pub fn read_json<R: Read>(input: R) -> Result<Self, CliError> {
        let doc: Value = serde_json::from_reader(input)?;
        let rows = doc
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Usage("JSON document has no `rows` array".into()))?;
        let columns: Vec<String> = match rows.first() {
            Some(Value::Object(obj)) => obj.keys().cloned().collect(),
            _ => Vec::new(),
        };
        let rows = rows
            .iter()
            .map(|r| columns.iter().map(|c| Cell::from_json(&r[c.as_str()])).collect())
            .collect();
        Ok(Self { columns, rows })
    }
}

#[derive(Debug, Serialize)]
pub struct Meta<P: Serialize> {
    pub version: &'static str,
    pub command: &'static str,
    pub params: P,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["n", "e*", "flag", "note", "opt"]);
        t.push(
            Row::new()
                .int(0)
                .complex(Complex64::new(-0.1, 1.0 / 3.0))
                .bool(true)
                .text("x")
                .opt_real(None),
        );
        t.push(
            Row::new()
                .int(1)
                .complex(Complex64::new(2.5e-300, -7.0))
                .bool(false)
                .text("")
                .opt_real(Some(0.1)),
        );
        t
    }

    #[test]
    fn split_columns() {
        assert_eq!(columns(&["a", "z*"]), vec!["a", "z_re", "z_im"]);
    }

    #[test]
    fn csv_round_trip() {
        let t = sample();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let back = Table::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.columns, t.columns);
        assert_eq!(back.rows[0][1], Cell::Real(-0.1));
        assert_eq!(back.rows[0][2], Cell::Real(1.0 / 3.0));
        assert_eq!(back.rows[1][1], Cell::Real(2.5e-300));
        assert_eq!(back.rows[0][5], Cell::Empty);
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let mut buf = Vec::new();
        let meta = Meta {
            version: "0",
            command: "test",
            params: (),
            seed: 0,
        };
        t.write_json(&mut buf, &meta).unwrap();
        let back = Table::read_json(buf.as_slice()).unwrap();
        assert_eq!(back.columns, t.columns);
        assert_eq!(back.rows[0][2], Cell::Real(1.0 / 3.0));
        assert_eq!(back.rows[1][0], Cell::Int(1));
        assert_eq!(back.rows[0][5], Cell::Empty);
    }
}
