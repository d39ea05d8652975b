//! Check reports shared by the verification harnesses and the CLI.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Holds at the caps, but only as a one-sided statement; never counts
    /// as a failure.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub operation: String,
    pub parameters: BTreeMap<String, String>,
    /// Named dimension sequences, e.g. `dim I ∩ U_{<=k}` for `k = 0..=d`.
    pub per_degree_dims: BTreeMap<String, Vec<usize>>,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(operation: impl Into<String>) -> Self {
        Self { operation: operation.into(), ..Self::default() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn dims(&mut self, key: &str, dims: Vec<usize>) -> &mut Self {
        self.per_degree_dims.insert(key.to_string(), dims);
        self
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, witness: witness.into() });
    }

    /// Records a pass/fail check.
    pub fn assert(&mut self, name: impl Into<String>, ok: bool, witness: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(name, status, witness);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    /// Appends another report's checks under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}: {}", c.name), ..c });
        }
        for (k, v) in other.per_degree_dims {
            self.per_degree_dims.insert(format!("{prefix}: {k}"), v);
        }
    }
}
