use serde::Serialize;

/// Outcome of a decision procedure: the property holds exactly when no
/// violation was recorded. Procedures that stop at the first failure leave a
/// single entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport<V> {
    violations: Vec<V>,
}

impl<V> CheckReport<V> {
    pub fn ok() -> Self {
        CheckReport { violations: Vec::new() }
    }

    pub fn failed(violation: V) -> Self {
        CheckReport { violations: vec![violation] }
    }

    pub fn from_violations(violations: Vec<V>) -> Self {
        CheckReport { violations }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[V] {
        &self.violations
    }

    pub fn first(&self) -> Option<&V> {
        self.violations.first()
    }

    pub fn into_violations(self) -> Vec<V> {
        self.violations
    }
}

impl<V> Default for CheckReport<V> {
    fn default() -> Self {
        Self::ok()
    }
}
