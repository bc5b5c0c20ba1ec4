//! Document rendering. JSON documents are the canonical form; CSV and
//! Markdown views flatten them into `key,value` rows unless a command has
//! a natural tabular shape.

use serde::Serialize;
use serde_json::Value;

pub fn json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

/// `rows` under `header` as CSV, one record per line.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn markdown(header: &[&str], rows: &[Vec<String>]) -> String {
    let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push_str(&line(header.iter().map(|_| "---".to_string()).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(|c| c.replace('|', "\\|")).collect()));
    }
    out
}

/// Dotted-path `(key, value)` pairs of a JSON document, in document order.
pub fn flatten<T: Serialize>(doc: &T) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    walk(&serde_json::to_value(doc).expect("documents serialize"), String::new(), &mut rows);
    rows
}

fn walk(value: &Value, path: String, rows: &mut Vec<Vec<String>>) {
    let child = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| walk(v, child(k), rows)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| walk(v, child(&i.to_string()), rows)),
        Value::String(s) => rows.push(vec![path, s.clone()]),
        Value::Null => rows.push(vec![path, String::new()]),
        other => rows.push(vec![path, other.to_string()]),
    }
}
