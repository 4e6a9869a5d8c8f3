//! Command reports.
//!
//! JSON fields: `command` (argv echo), `inputs_digest` (SHA-256 over the
//! canonical tables and input files), `results`, `witnesses`, `annotations`
//! (omitted when empty) and `timing_ms` (omitted in deterministic mode).

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Value,
    pub witnesses: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Length-prefixed SHA-256 over every input.
pub fn digest<'a>(inputs: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for part in inputs {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command.join(" ")));
        out.push_str(&format!("inputs_digest: {}\n", self.inputs_digest));
        render(&mut out, "results", &self.results, 0);
        if !self.witnesses.is_null() {
            render(&mut out, "witnesses", &self.witnesses, 0);
        }
        for a in &self.annotations {
            out.push_str(&format!("annotation: {a}\n"));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing_ms: {t}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()) && a.len() <= 16,
        Value::Object(_) => false,
        _ => true,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if scalar(v) {
        let s = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_separates_inputs() {
        assert_ne!(digest([b"ab".as_slice(), b"c"]), digest([b"a".as_slice(), b"bc"]));
        assert_eq!(digest([b"x".as_slice()]).len(), 64);
    }

    #[test]
    fn text_rendering_nests() {
        let r = Report {
            command: vec!["gyro".into(), "x".into()],
            inputs_digest: "00".into(),
            results: json!({ "a": 1, "b": { "c": [1, 2] }, "d": [{ "e": true }] }),
            witnesses: Value::Null,
            annotations: vec![],
            timing_ms: None,
        };
        let t = r.to_text();
        assert!(t.contains("results:\n  a: 1\n  b:\n    c: [1,2]\n  d:\n    [0]:\n      e: true\n"), "{t}");
        assert!(!r.to_json().contains("timing_ms"));
    }
}
