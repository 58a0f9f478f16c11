use serde::Serialize;

/// Outcome of checking an input against a list of axioms.
///
/// Every violation found is listed, not only the first one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport<V> {
    pub valid: bool,
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn from_violations(violations: Vec<V>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }
}
