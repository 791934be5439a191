//! Machine-readable check results and run reports.
//!
//! Reports serialize to JSON with a stable field order and no volatile data,
//! so output for a fixed input is byte-identical across runs. Counts that can
//! exceed 64 bits (group orders, orbit sizes at large genus) are carried as
//! decimal strings.

use serde::{Deserialize, Serialize};

/// Outcome of a single named check. Failed checks always carry a witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: &str) -> Self {
        Self {
            name: name.to_string(),
            pass: true,
            witness: None,
        }
    }

    pub fn pass_with(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass: true,
            witness: Some(detail.into()),
        }
    }

    pub fn fail(name: &str, witness: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_outcome(name: &str, pass: bool, witness: impl Into<String>) -> Self {
        if pass {
            Self::pass(name)
        } else {
            Self::fail(name, witness)
        }
    }
}

/// A batch of named checks.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Top-level report emitted by the command-line tool.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub genus: usize,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(command: &str, genus: usize) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            genus,
            checks: Vec::new(),
            data: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
