//! Matrix files and JSON output.
//!
//! A matrix file is `{"rows": r, "cols": c, "data": [[[re, im], ...], ...]}`.
//! Output is pretty-printed with one matrix row per line.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::linalg::{ComplexMatrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    /// Checks the declared shape against `data` and converts.
    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.rows == 0 || self.cols == 0 {
            return Err(format!(
                "matrix must be non-empty, got {}x{}",
                self.rows, self.cols
            ));
        }
        if self.data.len() != self.rows {
            return Err(format!(
                "declared {} rows but data has {}",
                self.rows,
                self.data.len()
            ));
        }
        if let Some((i, row)) = self
            .data
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.cols)
        {
            return Err(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                self.cols
            ));
        }
        let entries = self
            .data
            .iter()
            .flatten()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        ComplexMatrix::new(self.rows, self.cols, entries).map_err(|e| e.to_string())
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, String> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| format!("invalid matrix file: {e}"))?;
    file.to_matrix()
}

pub fn matrix_value(a: &ComplexMatrix) -> Value {
    let data: Vec<Value> = (0..a.rows())
        .map(|i| {
            Value::Array(
                (0..a.cols())
                    .map(|j| {
                        let z = a[(i, j)];
                        json!([number(z.re), number(z.im)])
                    })
                    .collect(),
            )
        })
        .collect();
    object(vec![
        ("rows", json!(a.rows())),
        ("cols", json!(a.cols())),
        ("data", Value::Array(data)),
    ])
}

/// JSON number with `-0.0` folded into `0.0`.
pub fn number(x: f64) -> Value {
    json!(if x == 0.0 { 0.0 } else { x })
}

pub fn numbers(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| number(x)).collect())
}

/// Object with keys in the given order.
pub fn object(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Objects and arrays of containers go one element per line; arrays whose
/// elements are scalars or arrays of scalars stay on one line.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                push_indent(indent + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(v, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            push_indent(indent, out);
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !is_inline(value) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                push_indent(indent + 1, out);
                write_value(v, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            push_indent(indent, out);
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(v, indent, out);
            }
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| {
            is_scalar(x) || matches!(x, Value::Array(inner) if inner.iter().all(is_scalar))
        }),
        _ => true,
    }
}

fn push_indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}
