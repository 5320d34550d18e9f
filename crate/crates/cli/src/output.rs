use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

/// Pretty JSON with a trailing newline. Field order is the struct order, so
/// equal reports give equal bytes.
pub fn to_json<R: Serialize>(report: &R) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A header row and data rows.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Long-format CSV of a report: one `quantity,value,provenance` row per
/// scalar. An object with a `provenance` string lends it to its siblings.
pub fn flatten<R: Serialize>(report: &R) -> Result<String> {
    let value = serde_json::to_value(report)?;
    let mut rows = Vec::new();
    walk(&value, "", "", &mut rows);
    table(&["quantity", "value", "provenance"], &rows)
}

fn walk(v: &Value, path: &str, inherited: &str, rows: &mut Vec<Vec<String>>) {
    let join = |key: &str| if path.is_empty() { key.to_owned() } else { format!("{path}.{key}") };
    match v {
        Value::Object(map) => {
            let provenance = map.get("provenance").and_then(Value::as_str).unwrap_or(inherited);
            for (key, child) in map {
                if key == "provenance" && child.is_string() {
                    continue;
                }
                let name = if key == "value" && map.contains_key("provenance") { path.to_owned() } else { join(key) };
                walk(child, &name, provenance, rows);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                walk(child, &join(&i.to_string()), inherited, rows);
            }
        }
        scalar => rows.push(vec![path.to_owned(), cell(scalar), inherited.to_owned()]),
    }
}

/// Rows of a sweep, one cell per column.
pub fn sweep_table(columns: &[&str], rows: &[Vec<Value>]) -> Result<String> {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell).collect()).collect();
    table(columns, &rows)
}

/// True when any object in the report carries `"vacuous": true`.
pub fn has_vacuous(v: &Value) -> bool {
    match v {
        Value::Object(map) => {
            map.get("vacuous") == Some(&Value::Bool(true)) || map.values().any(has_vacuous)
        }
        Value::Array(items) => items.iter().any(has_vacuous),
        _ => false,
    }
}
