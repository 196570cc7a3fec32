// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Result documents and error records.

use serde_json::{json, Map, Value};
use swm_core::distribution::WelfareDistribution;
use swm_core::rational::{self, Rational};
use swm_core::{Committee, Error};

/// Digits after the decimal point in decimal renderings.
pub const DECIMAL_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exact fraction first, rounded decimal second.
pub fn exact(r: &Rational) -> Value {
    json!({
        "fraction": rational::to_fraction_string(r),
        "decimal": rational::to_decimal_string(r, DECIMAL_DIGITS),
    })
}

pub fn committee(w: &Committee) -> Value {
    json!(w.members())
}

/// `τ → fraction` over the support.
pub fn distribution(d: &WelfareDistribution) -> Value {
    let map: Map<String, Value> = d
        .iter()
        .map(|(tau, p)| (tau.to_string(), Value::String(rational::to_fraction_string(p))))
        .collect();
    Value::Object(map)
}

pub struct Document {
    pub command: &'static str,
    pub request: Map<String, Value>,
    pub result: Value,
    pub method: String,
    pub work: Map<String, Value>,
    pub wall_time_ms: f64,
}

impl Document {
    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "request": self.request,
            "result": self.result,
            "method": self.method,
            "work": self.work,
            "wall_time_ms": self.wall_time_ms,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                flatten("", &self.to_value(), &mut out);
                out
            }
        }
    }
}

/// One `dotted.key: value` line per leaf; arrays of scalars stay inline.
fn flatten(prefix: &str, value: &Value, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Usage,
    Validation,
    ResourceLimit,
    Mismatch,
    Internal,
}

impl ExitKind {
    pub fn code(self) -> u8 {
        match self {
            ExitKind::Internal => 1,
            ExitKind::Usage => 2,
            ExitKind::Validation => 3,
            ExitKind::ResourceLimit => 4,
            ExitKind::Mismatch => 5,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ExitKind::Internal => "internal",
            ExitKind::Usage => "usage",
            ExitKind::Validation => "validation",
            ExitKind::ResourceLimit => "resource-limit",
            ExitKind::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub kind: ExitKind,
    pub message: String,
    pub extra: Map<String, Value>,
}

impl Failure {
    pub fn new(kind: ExitKind, message: impl Into<String>) -> Self {
        Failure {
            kind,
            message: message.into(),
            extra: Map::new(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(ExitKind::Usage, message)
    }

    /// Single-line JSON for standard error.
    pub fn record(&self) -> String {
        let mut map = Map::new();
        map.insert("error".into(), json!(self.kind.tag()));
        map.insert("exit_code".into(), json!(self.kind.code()));
        map.insert("message".into(), json!(self.message));
        map.extend(self.extra.clone());
        Value::Object(map).to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::InvalidInput(_) => ExitKind::Usage,
            Error::Validation(_) | Error::Parse(_) => ExitKind::Validation,
            Error::ResourceLimit { .. } => ExitKind::ResourceLimit,
        };
        let mut failure = Failure::new(kind, e.to_string());
        match &e {
            Error::ResourceLimit {
                what,
                required,
                cap,
                reason,
            } => {
                failure.extra.insert("what".into(), json!(what));
                failure.extra.insert("required".into(), json!(required));
                failure.extra.insert("cap".into(), json!(cap));
                failure.extra.insert("reason".into(), json!(reason));
            }
            Error::Validation(violations) => {
                let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                failure.extra.insert("violations".into(), json!(list));
            }
            _ => {}
        }
        failure
    }
}
