//! Pass/fail reports produced by the verification suites.

use serde::Serialize;

/// Outcome of one named check inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First witness of failure, rendered against the canonical basis labels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, counterexample: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, counterexample: Some(witness.into()) }
    }
}

/// A verification report: a suite name and its individual checks.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Records a check that passes iff `witness` is `None`.
    pub fn record(&mut self, name: &str, witness: Option<String>) {
        match witness {
            None => self.push(Check::pass(name)),
            Some(w) => self.push(Check::fail(name, w)),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{}: PASS ({} checks)", self.suite, self.checks.len()),
            Some(c) => format!(
                "{}: FAIL at {} ({})",
                self.suite,
                c.name,
                c.counterexample.as_deref().unwrap_or("no witness")
            ),
        }
    }
}
