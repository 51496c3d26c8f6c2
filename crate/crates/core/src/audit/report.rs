use serde::{Deserialize, Serialize};

/// Outcome of one sampled property check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    /// Largest residual seen; `0` for exact checks.
    pub max_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Accumulates samples for a [`Check`]; the first failure note is kept.
#[derive(Debug, Clone)]
pub struct Tally {
    check: Check,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally {
            check: Check {
                name: name.into(),
                passed: true,
                samples: 0,
                max_residual: 0.0,
                note: None,
            },
        }
    }

    /// Counts a sample that passes iff `ok`.
    pub fn record(&mut self, ok: bool, residual: f64, note: impl FnOnce() -> String) {
        self.check.samples += 1;
        if residual.is_nan() || residual > self.check.max_residual {
            self.check.max_residual = residual;
        }
        if !ok && self.check.passed {
            self.check.passed = false;
            self.check.note = Some(note());
        }
    }

    /// Counts a sample whose residual must not exceed `bound`.
    pub fn within(&mut self, residual: f64, bound: f64, what: &str) {
        self.record(residual <= bound, residual, || {
            format!("{what}: residual {residual:e} exceeds {bound:e}")
        });
    }

    pub fn exact(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record(ok, 0.0, what);
    }

    /// Attaches an informational note to a passing check.
    pub fn annotate(&mut self, note: impl Into<String>) {
        if self.check.passed {
            self.check.note = Some(note.into());
        }
    }

    pub fn finish(self) -> Check {
        self.check
    }
}
