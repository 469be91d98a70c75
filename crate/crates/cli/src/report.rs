//! Deterministic report serialization.

use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output of one command. Object keys serialize in sorted order, so equal
/// inputs give byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub seed: Option<u64>,
    pub version: String,
}

impl AnalysisReport {
    pub fn new(command: &str, inputs: Value, results: Value, seed: Option<u64>) -> Self {
        Self {
            command: command.into(),
            inputs,
            results,
            seed,
            version: VERSION.into(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nversion: {}\n", self.command, self.version);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        out.push_str("inputs:\n");
        render(&self.inputs, 1, &mut out);
        out.push_str("results:\n");
        render(&self.results, 1, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render_map(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(v, depth + 1, out);
            }
        }
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => render_map(map, depth, out),
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted_and_stable() {
        let r = AnalysisReport::new("x", json!({"b": 1, "a": 2}), json!({"z": [1, 2], "y": {"q": "1/2"}}), Some(3));
        let j = r.to_json();
        assert!(j.find("\"a\"").unwrap() < j.find("\"b\"").unwrap());
        assert_eq!(j, r.clone().to_json());
        let t = r.to_text();
        assert!(t.contains("  z: [1, 2]\n"));
        assert!(t.contains("    q: 1/2\n"));
    }
}
