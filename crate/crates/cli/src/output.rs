use std::fmt::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA: &str = "negcurve-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub struct Report {
    pub command: String,
    pub preset: Option<String>,
    pub field: Option<Value>,
    pub result: Value,
    /// False when a verification inside the task failed.
    pub verified: bool,
}

impl Report {
    pub fn envelope(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "preset": self.preset,
            "field": self.field,
            "verified": self.verified,
            "result": self.result,
        })
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.envelope()).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            flatten("", &report.envelope(), &mut out);
            out
        }
    }
}

/// One `path = value` line per scalar leaf.
fn flatten(path: &str, v: &Value, out: &mut String) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{path} = {v}");
        }
    }
}

/// Marks every number of a result object as computed here.
pub fn computed(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.entry("source").or_insert_with(|| json!("computed"));
    }
    v
}
