//! Reports: an input digest, a findings tree and an overall status, with
//! JSON and text renderings.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A computation without a pass/fail criterion.
    Ok,
    Pass,
    Fail,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub status: Status,
    pub findings: Value,
    pub timings: Option<Value>,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Fail => 1,
            Status::Ok | Status::Pass => 0,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputsDigest".into(), json!(self.inputs_digest));
        m.insert("status".into(), json!(self.status.name()));
        m.insert("findings".into(), self.findings.clone());
        if let Some(t) = &self.timings {
            m.insert("timings".into(), t.clone());
        }
        Value::Object(m)
    }

    /// Pretty JSON with sorted keys, newline-terminated.
    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    /// A two-column table of the flattened findings.
    pub fn render_text(&self) -> String {
        let mut rows = vec![
            ("command".to_string(), self.command.clone()),
            ("status".to_string(), self.status.name().to_string()),
            ("inputsDigest".to_string(), self.inputs_digest.clone()),
        ];
        flatten("", &self.findings, &mut rows);
        if let Some(t) = &self.timings {
            flatten("timings", t, &mut rows);
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let pad = width - k.chars().count();
            out.push_str(&k);
            out.push_str(&" ".repeat(pad + 2));
            out.push_str(&v);
            out.push('\n');
        }
        out
    }
}

/// SHA-256 of the compact JSON encoding (keys sorted).
pub fn digest(v: &Value) -> String {
    let text = serde_json::to_string(v).expect("JSON values always serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Scalars, vectors and matrices print inline; everything else recurses.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a)
            if a.iter().all(is_scalar)
                || a.iter().all(|r| matches!(r, Value::Array(xs) if xs.iter().all(is_scalar))) =>
        {
            out.push((prefix.to_string(), inline(v)));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), inline(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_flattens_objects() {
        let r = Report {
            command: "segre".into(),
            inputs_digest: digest(&json!({"a": 1})),
            status: Status::Pass,
            findings: json!({"polynomial": "c1^2 - c2", "nested": {"m": [["1", "0"], ["0", "1"]]}}),
            timings: None,
        };
        let t = r.render_text();
        assert!(t.contains("nested.m"));
        assert!(t.contains("[[1, 0], [0, 1]]"));
        assert!(t.contains("PASS"));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn digests_ignore_key_order() {
        let a: Value = serde_json::from_str(r#"{"x": 1, "y": [2]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"y": [2], "x": 1}"#).unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(digest(&a).len(), 64);
    }
}
