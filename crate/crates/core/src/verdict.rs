use alloc::string::String;
use serde::{Deserialize, Serialize};

/// Outcome of a single gate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// A condition of the criterion is violated.
    Fail(String),
    /// The data at hand cannot decide the condition.
    Inconclusive(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (f @ Status::Fail(_), _) | (_, f @ Status::Fail(_)) => f,
            (i @ Status::Inconclusive(_), _) | (_, i @ Status::Inconclusive(_)) => i,
            _ => Status::Pass,
        }
    }
}
