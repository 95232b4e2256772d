//! Text renderings shared by the subcommands.

use dslice_core::tables::{centered_range, CorrectionMatrix, CorrectionTable};
use dslice_core::Rational;
use serde_json::{json, Value};

pub fn join(values: &[Rational]) -> String {
    values.iter().map(Rational::to_string).collect::<Vec<_>>().join(", ")
}

fn indices(n: u64, centered: bool) -> Vec<i64> {
    if centered {
        centered_range(n).collect()
    } else {
        (0..n as i64).collect()
    }
}

pub fn table_values(t: &CorrectionTable, centered: bool) -> (Vec<i64>, Vec<Rational>) {
    let idx = indices(t.modulus, centered);
    let vals = idx.iter().map(|&i| t.at(i)).collect();
    (idx, vals)
}

pub fn table_json(t: &CorrectionTable, centered: bool) -> Value {
    let (idx, vals) = table_values(t, centered);
    json!({ "indices": idx, "values": vals })
}

pub fn table_pretty(label: &str, t: &CorrectionTable, centered: bool) -> String {
    let (idx, vals) = table_values(t, centered);
    let head: Vec<String> = idx.iter().map(i64::to_string).collect();
    let body: Vec<String> = vals.iter().map(Rational::to_string).collect();
    grid(&[("i".to_string(), head), (label.to_string(), body)])
}

fn rows_of(m: &CorrectionMatrix, centered: bool) -> (Vec<i64>, Vec<i64>, Vec<Vec<Rational>>) {
    let ri = indices(m.row_modulus, centered);
    let ci = indices(m.col_modulus, centered);
    let rows = ri.iter().map(|&i| ci.iter().map(|&j| m.at(i, j)).collect()).collect();
    (ri, ci, rows)
}

pub fn matrix_json(m: &CorrectionMatrix, centered: bool) -> Value {
    let (ri, ci, rows) = rows_of(m, centered);
    json!({ "row_indices": ri, "col_indices": ci, "rows": rows })
}

pub fn matrix_csv(m: &CorrectionMatrix, centered: bool) -> String {
    let (_, _, rows) = rows_of(m, centered);
    rows.iter().map(|r| join(r) + "\n").collect()
}

/// Right-aligned matrix with row and column indices.
pub fn matrix_pretty(m: &CorrectionMatrix, centered: bool) -> String {
    let (ri, ci, rows) = rows_of(m, centered);
    let mut lines = vec![(String::new(), ci.iter().map(i64::to_string).collect())];
    for (i, row) in ri.iter().zip(&rows) {
        lines.push((i.to_string(), row.iter().map(Rational::to_string).collect()));
    }
    grid(&lines)
}

fn grid(lines: &[(String, Vec<String>)]) -> String {
    let lw = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let cols = lines.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|k| lines.iter().filter_map(|(_, c)| c.get(k)).map(String::len).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (label, cells) in lines {
        out.push_str(&format!("{label:>lw$} |"));
        for (cell, w) in cells.iter().zip(&widths) {
            out.push_str(&format!(" {cell:>w$}"));
        }
        out.push('\n');
    }
    out
}

/// `path, value` lines for every scalar leaf, in key order.
pub fn flatten_csv(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, String::new(), &mut out);
    out
}

fn flatten(v: &Value, path: String, out: &mut String) {
    let sep = |p: &str, k: &str| if p.is_empty() { k.to_string() } else { format!("{p}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(x, sep(&path, k), out)),
        Value::Array(xs) => xs.iter().enumerate().for_each(|(k, x)| flatten(x, sep(&path, &k.to_string()), out)),
        _ => out.push_str(&format!("{path}, {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}

/// Indented outline; arrays of scalars stay on one line.
pub fn outline(v: &Value) -> String {
    let mut out = String::new();
    outline_into(v, 0, &mut out);
    out
}

fn outline_into(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    outline_into(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    outline_into(x, depth + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array() || is_flat(x) && x.is_array()),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".to_string(),
        _ => scalar(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_paths() {
        let v = json!({"a": {"b": [1, "x"]}, "c": null});
        assert_eq!(flatten_csv(&v), "a.b.0, 1\na.b.1, x\nc, none\n");
    }

    #[test]
    fn outline_keeps_scalar_arrays_inline() {
        let v = json!({"v": [[1, 2], [3]], "w": {"z": true}});
        assert_eq!(outline(&v), "v: [[1, 2], [3]]\nw:\n  z: true\n");
    }
}
