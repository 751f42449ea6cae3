//! Pass/fail reporting for the verification suites.
//!
//! Verifiers never abort on a failed identity; they record the failure with
//! a witness so the caller (tests, CLI) can surface every violation.

/// A single named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    /// Offending object or value, present on failure.
    pub witness: Option<String>,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    pub fn pass(&mut self, label: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, label: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            passed: false,
            witness: Some(witness.into()),
        });
    }

    /// Record `label` as passed when `ok`, otherwise failed with the
    /// lazily-built witness.
    pub fn record(&mut self, label: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(label);
        } else {
            self.fail(label, witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Merge another report's checks into this one, prefixing their labels.
    pub fn absorb(&mut self, other: CheckReport) {
        for mut check in other.checks {
            check.label = format!("{}: {}", other.name, check.label);
            self.checks.push(check);
        }
    }
}
