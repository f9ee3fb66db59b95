//! Rendering of command results. Every command builds one JSON value; the
//! CSV and human formats are views of that value.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

pub fn render(value: &Value, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, value)?;
            writeln!(out)
        }
        Format::Csv => {
            let pairs = flatten(value);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(pairs.iter().map(|(k, _)| k.as_str()))?;
            w.write_record(pairs.iter().map(|(_, v)| v.as_str()))?;
            w.flush()
        }
        Format::Human => {
            let mut text = String::new();
            human(value, 0, &mut text);
            out.write_all(text.as_bytes())
        }
    }
}

/// Scalar leaves keyed by dotted path; array elements use their index.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(value, String::new(), &mut out);
    out
}

fn walk(value: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| walk(v, join(k), out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| walk(v, join(&i.to_string()), out)),
        scalar => out.push((path, scalar_text(scalar))),
    }
}

pub fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arrays holding no objects print on one line.
fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_inline),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline_text(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(inline_text).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => scalar_text(other),
    }
}

fn human(value: &Value, depth: usize, text: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    v if is_inline(v) => {
                        let _ = writeln!(text, "{pad}{k}: {}", inline_text(v));
                    }
                    nested => {
                        let _ = writeln!(text, "{pad}{k}:");
                        human(nested, depth + 1, text);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                if is_inline(v) {
                    let _ = writeln!(text, "{pad}[{i}] {}", inline_text(v));
                } else {
                    let _ = writeln!(text, "{pad}[{i}]");
                    human(v, depth + 1, text);
                }
            }
        }
        scalar => {
            let _ = writeln!(text, "{pad}{}", inline_text(scalar));
        }
    }
}
