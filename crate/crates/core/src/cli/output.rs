use serde_json::{Map, Value};

use super::Format;
use crate::error::{Error, Result};

pub fn render(value: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => to_csv(value),
    }
}

/// Flattens nested objects to dotted keys and arrays to indexed keys.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// One row per element of `rows` when present, otherwise one row for the
/// whole value. Columns follow first appearance.
pub fn to_csv(value: &Value) -> Result<String> {
    let records: Vec<&Value> = match value.get("rows").and_then(Value::as_array) {
        Some(rows) => rows.iter().collect(),
        None => vec![value],
    };
    let flat: Vec<Vec<(String, String)>> = records
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten("", r, &mut cells);
            cells
        })
        .collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Input(e.to_string());
    w.write_record(&columns).map_err(csv_err)?;
    for row in &flat {
        let map: Map<String, Value> = row
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let record: Vec<&str> = columns
            .iter()
            .map(|c| map.get(c).and_then(Value::as_str).unwrap_or(""))
            .collect();
        w.write_record(&record).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Input(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Input(e.to_string()))
}
