//! Report envelope, diagnostics and exit codes.

use std::fmt::Display;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Violation
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Value,
    pub input_digest: String,
    pub status: Status,
    pub result: Value,
    pub summary: Vec<String>,
    pub version: &'static str,
}

/// What a command produces before the envelope is filled in.
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: Value, digest: String, outcome: Outcome) -> Self {
        Report {
            command,
            input_digest: digest,
            status: outcome.status,
            result: outcome.result,
            summary: outcome.summary,
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} ({})\n",
            self.command["name"].as_str().unwrap_or("?"),
            status_word(self.status)
        );
        for line in &self.summary {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Violation => "violation",
    }
}

/// Input problems; always exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
}

impl InputError {
    pub fn new(kind: &'static str, message: impl Display) -> Self {
        InputError {
            kind,
            message: message.to_string(),
        }
    }

    pub fn to_json(&self, command: &Value) -> String {
        let v = json!({
            "command": command,
            "error": { "kind": self.kind, "message": self.message },
            "version": VERSION,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("diagnostic serializes");
        s.push('\n');
        s
    }
}

/// `sha256:` digest over the given inputs, each prefixed by its length.
pub fn digest<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}

/// Exact scalar as a fraction string.
pub fn q(x: &impl Display) -> Value {
    Value::String(x.to_string())
}

pub fn qpair<T: Display>(p: &(T, T)) -> Value {
    json!([q(&p.0), q(&p.1)])
}
