//! Rendering of reports. JSON is canonical; text is derived from it.

use serde_json::Value;

use crate::commands::Report;
use crate::Format;

pub fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", to_json(&report.json)),
        Format::Text => text(&report.json),
        Format::Latex if report.latex.is_empty() => text(&report.json),
        Format::Latex => report.latex.iter().map(|(label, p)| format!("\\[ {label} = {} \\]\n", p.to_latex())).collect(),
    }
}

/// One `path: value` line per scalar, with arrays of scalars inline.
fn text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

fn walk(v: &Value, path: &str, out: &mut String) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                walk(child, &join(k), out);
            }
        }
        Value::Array(items) => match items.iter().map(scalar).collect::<Option<Vec<_>>>() {
            Some(parts) => out.push_str(&format!("{path}: [{}]\n", parts.join(", "))),
            None => {
                for (i, child) in items.iter().enumerate() {
                    walk(child, &join(&i.to_string()), out);
                }
            }
        },
        _ => out.push_str(&format!("{path}: {}\n", scalar(v).unwrap_or_default())),
    }
}
