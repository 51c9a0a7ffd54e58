//! Line-oriented reports with a JSON mode. Scalars are rendered as exact
//! strings (`num/den` or residues), never as floats.

use std::fmt::Write as _;

use kummer_core::verify::{Check, Status};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub status: String,
    pub witness: Vec<(String, String)>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub curve: String,
    pub equation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub data: Vec<(String, String)>,
    pub checks: Vec<CheckOut>,
    pub status: String,
}

impl Report {
    pub fn new(command: &str, curve: &kummer_core::Genus2Curve) -> Report {
        Report {
            command: command.into(),
            curve: curve.label().unwrap_or("unnamed").into(),
            equation: curve.to_string(),
            seed: None,
            data: Vec::new(),
            checks: Vec::new(),
            status: String::new(),
        }
    }

    pub fn data(&mut self, key: impl Into<String>, value: impl ToString) {
        self.data.push((key.into(), value.to_string()));
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(CheckOut {
            name: c.name,
            status: c.status.to_string(),
            witness: c.witness,
        });
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail.to_string())
    }

    pub fn finish(&mut self) {
        self.status = if self.failed() { "FAIL" } else { "PASS" }.into();
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        }
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "curve: {}", self.curve);
        let _ = writeln!(out, "equation: {}", self.equation);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for (k, v) in &self.data {
            let _ = writeln!(out, "{k}: {v}");
        }
        for c in &self.checks {
            let witness: Vec<String> = c
                .witness
                .iter()
                .filter(|(_, v)| !v.is_empty())
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            if witness.is_empty() {
                let _ = writeln!(out, "{}: {}", c.name, c.status);
            } else {
                let _ = writeln!(out, "{}: {} [{}]", c.name, c.status, witness.join(" "));
            }
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }
}
