//! Command reports and their JSON or text serialization.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every check passed.
    Ok,
    /// The input is well formed but fails a mathematical check.
    Fail,
    /// The command could not run: bad arguments, unreadable or malformed
    /// input.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// SHA-256 digest of a file read or written by a command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        Self {
            path: path.to_owned(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub provenance: Provenance,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Serializes a report. JSON output has sorted keys and a trailing newline;
/// text output lists one `path: value` line per leaf, in the same order.
pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    let value = serde_json::to_value(report).expect("reports serialize to JSON");
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            out.push('\n');
            out.into_bytes()
        }
        Format::Text => {
            if let Some(help) = report.payload.get("help").and_then(Value::as_str) {
                return help.as_bytes().to_vec();
            }
            let mut out = String::new();
            flatten("", &value, &mut out);
            out.into_bytes()
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_owned()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        Value::String(s) if s.contains('\n') => {
            let _ = writeln!(out, "{prefix}:");
            for line in s.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}: {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}
