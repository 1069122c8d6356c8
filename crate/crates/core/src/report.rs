//! Verification reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The identity being checked, in words.
    pub identity: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// An ordered list of check records for one suite.
///
/// Serialization is deterministic: records keep insertion order and timing is
/// only present when explicitly recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: u32,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub const REPORT_VERSION: u32 = 1;

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            version: REPORT_VERSION,
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn pass(&mut self, id: impl Into<String>, identity: impl Into<String>) {
        self.record(id, identity, Ok(()));
    }

    pub fn fail(&mut self, id: impl Into<String>, identity: impl Into<String>, witness: impl Into<String>) {
        self.record(id, identity, Err(witness.into()));
    }

    pub fn record(&mut self, id: impl Into<String>, identity: impl Into<String>, outcome: Result<(), String>) {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        self.checks.push(CheckRecord {
            id: id.into(),
            identity: identity.into(),
            status,
            witness,
        });
    }

    /// Append the records of `other`, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.id = format!("{prefix}/{}", c.id);
            }
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
