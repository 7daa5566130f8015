use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use mixval::dissection::Certificate;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Command output. Field order is fixed and nothing time-dependent is
/// included, so equal inputs and seeds give equal bytes.
#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    input_digest: Option<String>,
    seed: u64,
    results: Map<String, Value>,
    certificates: Vec<Certificate>,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input_digest: Option<String>, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            input_digest,
            seed,
            results: Map::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn certificate(&mut self, c: Certificate) {
        self.certificates.push(c);
    }

    pub fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    pub fn fail(&mut self, s: String) {
        self.failures.push(s);
    }

    pub fn violated(&self) -> bool {
        !self.failures.is_empty() || self.certificates.iter().any(|c| !c.holds())
    }

    pub fn to_value(&self) -> Value {
        let certs: Vec<Value> = self
            .certificates
            .iter()
            .map(|c| json!({"name": c.name, "expected": c.expected, "actual": c.actual, "holds": c.holds()}))
            .collect();
        json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "seed": self.seed,
            "results": self.results,
            "certificates": certs,
            "notes": self.notes,
            "failures": self.failures,
            "status": if self.violated() { "violation" } else { "ok" },
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(d) = &self.input_digest {
            out += &format!("input sha256: {d}\n");
        }
        out += &format!("seed: {}\n", self.seed);
        for (k, v) in &self.results {
            if k == "dissection" {
                continue;
            }
            if k == "suites" {
                for row in v.as_array().into_iter().flatten() {
                    out += &format!("{:<24} {:<6} checks={}", row["suite"].as_str().unwrap_or(""), row["status"].as_str().unwrap_or(""), row["checks"]);
                    if let Some(c) = row["counterexample"].as_str() {
                        out += &format!("  counterexample: {c}");
                    }
                    for n in row["notes"].as_array().into_iter().flatten() {
                        out += &format!("  note: {}", n.as_str().unwrap_or(""));
                    }
                    out.push('\n');
                }
                continue;
            }
            out += &format!("{k}: {}\n", compact(v));
        }
        for c in &self.certificates {
            let mark = if c.holds() { "ok" } else { "FAILED" };
            out += &format!("certificate {}: expected {} got {} [{mark}]\n", c.name, c.expected, c.actual);
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        for f in &self.failures {
            out += &format!("failure: {f}\n");
        }
        out += &format!("status: {}\n", if self.violated() { "violation" } else { "ok" });
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
