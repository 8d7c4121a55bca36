//! Versioned run reports: one record per check, deterministic apart from
//! `wallTime`.

use std::fmt::{self, Display, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: &str = "bclab/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Record {
    pub name: String,
    pub paper_ref: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub schema: String,
    pub command: Vec<String>,
    pub seed: u64,
    pub pass: bool,
    pub records: Vec<Record>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    pub wall_time: f64,
}

/// Records and details accumulated by a suite.
#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub details: Map<String, Value>,
}

impl Outcome {
    pub fn check(&mut self, name: impl Into<String>, paper_ref: &str, expected: impl Display, actual: impl Display, pass: bool) {
        self.records.push(Record {
            name: name.into(),
            paper_ref: paper_ref.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    pub fn detail(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")));
        self.details.insert(key.into(), value);
    }

    pub fn extend(&mut self, prefix: &str, other: Outcome) {
        self.records.extend(other.records);
        for (k, v) in other.details {
            self.details.insert(format!("{prefix}.{k}"), v);
        }
    }
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64, outcome: Outcome, wall_time: f64) -> Self {
        let pass = outcome.records.iter().all(|r| r.pass);
        RunReport {
            schema: SCHEMA.into(),
            command,
            seed,
            pass,
            records: outcome.records,
            details: outcome.details,
            wall_time,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} (seed {})", self.schema, self.command.join(" "), self.seed);
        for r in &self.records {
            let _ = writeln!(out, "{} {} [{}]: {} (expected {})", verdict(r.pass), r.name, r.paper_ref, r.actual, r.expected);
        }
        let passed = self.records.iter().filter(|r| r.pass).count();
        let _ = writeln!(out, "{}: {passed}/{} checks, {:.3}s", verdict(self.pass), self.records.len(), self.wall_time);
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
