//! JSON and text rendering. JSON objects come out with sorted keys, so the
//! same invocation always prints the same bytes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// One `key: value` line per top-level field; nested values print as
/// compact JSON, multi-line strings are indented below their key.
fn render_text(v: &Value) -> String {
    let Value::Object(map) = v else {
        return format!("{}\n", scalar(v));
    };
    let mut out = String::new();
    for (k, v) in map {
        match v {
            Value::String(s) if s.contains('\n') => {
                out.push_str(&format!("{k}:\n"));
                for line in s.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            }
            Value::Array(items) if items.iter().all(|i| matches!(i, Value::String(s) if s.contains('\n'))) && !items.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("  # {}\n", i + 1));
                    for line in item.as_str().unwrap().lines() {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
            }
            _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
        }
    }
    out
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(v),
    }
}

pub fn emit(v: &Value, format: Format, out: Option<&Path>) -> io::Result<()> {
    let text = render(v, format);
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
