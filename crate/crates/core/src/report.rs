use serde::{Deserialize, Serialize};

/// Outcome of a finite verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Informational lines (sizes, ranks).
    #[serde(default)]
    pub details: Vec<String>,
    /// Violated clauses or counterexamples; nonempty iff `pass` is false.
    #[serde(default)]
    pub failures: Vec<String>,
    /// Caveats that do not fail the check.
    #[serde(default)]
    pub flags: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), pass: true, seed: None, details: vec![], failures: vec![], flags: vec![] }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn detail(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    pub fn fail(&mut self, s: impl Into<String>) {
        self.pass = false;
        self.failures.push(s.into());
    }

    pub fn flag(&mut self, s: impl Into<String>) {
        self.flags.push(s.into());
    }

    pub fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fail(what());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.pass &= other.pass;
        let tag = other.check;
        self.details.extend(other.details.into_iter().map(|d| format!("{tag}: {d}")));
        self.failures.extend(other.failures.into_iter().map(|d| format!("{tag}: {d}")));
        self.flags.extend(other.flags.into_iter().map(|d| format!("{tag}: {d}")));
    }
}
