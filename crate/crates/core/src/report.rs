//! Verification reports.

use serde_json::{json, Value};

/// Outcome of one check on one `(n, q)` instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub n: usize,
    pub q: i64,
    pub check: String,
    pub total: usize,
    pub failures: Vec<String>,
    pub seed: Option<u64>,
    pub details: Value,
}

impl CheckReport {
    pub fn new(check: &str, n: usize, q: i64) -> Self {
        CheckReport {
            n,
            q,
            check: check.to_string(),
            total: 0,
            failures: Vec::new(),
            seed: None,
            details: json!({}),
        }
    }

    /// Records one check; `failure` is called only when `ok` is false.
    pub fn record(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn detail(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.details {
            map.insert(key.to_string(), value);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": {"n": self.n, "q": self.q},
            "check": self.check,
            "total": self.total,
            "failures": self.failures,
            "seed": self.seed,
            "details": self.details,
        })
    }
}
