//! Check outcomes shared by every validator, with a canonical JSON form.

use serde_json::{json, Map, Value};

/// Violations kept verbatim in a report; the full count is always recorded.
pub const MAX_LISTED: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Rendered input words or entries that exhibit the failure.
    pub input: Vec<String>,
    /// Nonzero residual terms as `(term, num/den)`.
    pub residual: Vec<(String, String)>,
}

impl Violation {
    pub fn new(input: Vec<String>, residual: Vec<(String, String)>) -> Self {
        Violation { input, residual }
    }

    fn to_json(&self) -> Value {
        let residual: Map<String, Value> = self
            .residual
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        json!({ "input": self.input, "residual": residual })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub checked: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl CheckOutcome {
    pub fn from_results(name: impl Into<String>, results: Vec<Option<Violation>>) -> Self {
        let checked = results.len();
        let all: Vec<Violation> = results.into_iter().flatten().collect();
        let violation_count = all.len();
        CheckOutcome {
            name: name.into(),
            checked,
            violation_count,
            violations: all.into_iter().take(MAX_LISTED).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed(),
            "checked": self.checked,
            "violation_count": self.violation_count,
            "violations": self.violations.iter().map(Violation::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn new(checks: Vec<CheckOutcome>) -> Self {
        ValidationReport { checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckOutcome::to_json).collect::<Vec<_>>(),
        })
    }
}
