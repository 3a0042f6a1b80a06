use serde::Serialize;

/// Outcome of an exhaustive or sampled check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub name: String,
    /// What was audited, e.g. `"mod 9"` or `"X58i"`.
    pub scope: String,
    /// Number of cases examined.
    pub cases: usize,
    pub counterexamples: Vec<String>,
}

impl AuditReport {
    pub fn new(name: impl Into<String>, scope: impl Into<String>) -> Self {
        AuditReport { name: name.into(), scope: scope.into(), cases: 0, counterexamples: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Records one case; `failure` is `Some(description)` on a counterexample.
    pub fn record(&mut self, failure: Option<String>) {
        self.cases += 1;
        self.counterexamples.extend(failure);
    }

    /// Records one named check.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record((!ok).then(what));
    }
}
