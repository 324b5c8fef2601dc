//! Structured pass/fail reporting for verification sweeps. Failures of
//! mathematical assertions are data, not panics; callers decide whether a
//! failed item aborts.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    /// Dotted identifier, e.g. "datum.braid" or "relations.quadratic".
    pub check: String,
    /// Human-readable location: weight, simple roots, orbit.
    pub context: String,
    pub pass: bool,
    /// Rendering of the offending element for failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { items: Vec::new() }
    }

    pub fn record(&mut self, check: &str, context: String, pass: bool, witness: Option<String>) {
        self.items.push(CheckItem {
            check: check.to_string(),
            context,
            pass,
            witness,
        });
    }

    pub fn pass(&mut self, check: &str, context: String) {
        self.record(check, context, true, None);
    }

    pub fn fail(&mut self, check: &str, context: String, witness: String) {
        self.record(check, context, false, Some(witness));
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|i| !i.pass).collect()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// One-line summary: "412 checks, all passed" or the failure count.
    pub fn summary(&self) -> String {
        let fails = self.failures().len();
        if fails == 0 {
            format!("{} checks, all passed", self.len())
        } else {
            format!("{} checks, {} FAILED", self.len(), fails)
        }
    }

    /// Deterministic ordering for report emission.
    pub fn sort(&mut self) {
        self.items
            .sort_by(|a, b| (&a.check, &a.context).cmp(&(&b.check, &b.context)));
    }
}
