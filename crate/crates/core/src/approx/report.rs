use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;

/// One evaluated inequality `lhs ≤ rhs`.
///
/// `pass` holds iff `lhs ≤ rhs · (1 + tolerance)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub fixture: String,
    /// Human-readable form of the checked inequality.
    pub inequality: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, Value>,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        fixture: impl Into<String>,
        inequality: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        BoundReport {
            name: name.into(),
            fixture: fixture.into(),
            inequality: inequality.into(),
            lhs,
            rhs,
            tolerance,
            pass: passes(lhs, rhs, tolerance),
            inputs: BTreeMap::new(),
        }
    }

    /// Exact (or tolerance-scaled) agreement, reported as `|a − b| ≤ tol`.
    pub fn close(name: impl Into<String>, fixture: impl Into<String>, got: f64, want: f64, tol: f64) -> Self {
        let mut r = BoundReport::new(name, fixture, "|got - want| <= tol", (got - want).abs(), tol, 0.0);
        r.inputs.insert("got".into(), Value::from(got));
        r.inputs.insert("want".into(), Value::from(want));
        r
    }

    pub fn with_input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }
}

pub fn passes(lhs: f64, rhs: f64, tolerance: f64) -> bool {
    lhs <= rhs * (1.0 + tolerance)
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<40} {:<36} {:>14.6e} {:>14.6e} {:>8.2e}  {}",
            self.name,
            self.fixture,
            self.lhs,
            self.rhs,
            self.tolerance,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// Fixed-width table header for [`BoundReport`]'s `Display`.
pub fn table_header() -> String {
    format!(
        "{:<40} {:<36} {:>14} {:>14} {:>8}  {}",
        "name", "fixture", "lhs", "rhs", "tol", "result"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_uses_relative_tolerance() {
        assert!(BoundReport::new("x", "f", "a<=b", 1.05, 1.0, 0.1).pass);
        assert!(!BoundReport::new("x", "f", "a<=b", 1.2, 1.0, 0.1).pass);
        assert!(BoundReport::new("x", "f", "a<=b", 0.0, 0.0, 0.0).pass);
        assert!(!BoundReport::close("c", "f", 1.0, 1.0 + 1e-9, 1e-12).pass);
    }

    #[test]
    fn json_keeps_inputs() {
        let r = BoundReport::new("x", "torus", "a<=b", 1.0, 2.0, 0.0).with_input("b1", 2);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["inputs"]["b1"], 2);
        assert_eq!(serde_json::from_value::<BoundReport>(v).unwrap(), r);
    }
}
