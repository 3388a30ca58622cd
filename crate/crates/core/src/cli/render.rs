//! Output formats for command results.

use clap::ValueEnum;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

/// A command result: the JSON document plus optional hand-made text renderings.
#[derive(Clone, Debug)]
pub struct Output {
    pub doc: Value,
    pub tsv: Option<Vec<String>>,
    pub pretty: Option<Vec<String>>,
}

impl Output {
    pub fn new(doc: Value) -> Self {
        Output {
            doc,
            tsv: None,
            pretty: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.doc).expect("serializable");
                s.push('\n');
                s
            }
            Format::Tsv => lines(self.tsv.clone().unwrap_or_else(|| flatten(&self.doc, "\t"))),
            Format::Pretty => {
                lines(self.pretty.clone().unwrap_or_else(|| flatten(&self.doc, ": ")))
            }
        }
    }
}

fn lines(v: Vec<String>) -> String {
    let mut s = v.join("\n");
    s.push('\n');
    s
}

/// One `path<sep>value` line per scalar leaf, in key order.
pub fn flatten(doc: &Value, sep: &str) -> Vec<String> {
    let mut out = Vec::new();
    walk(doc, String::new(), sep, &mut out);
    out
}

fn walk(v: &Value, path: String, sep: &str, out: &mut Vec<String>) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                walk(x, join(k), sep, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let cells: Vec<String> = items.iter().map(scalar).collect();
            out.push(format!("{path}{sep}{}", cells.join(",")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                walk(x, join(&i.to_string()), sep, out);
            }
        }
        _ => out.push(format!("{path}{sep}{}", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
