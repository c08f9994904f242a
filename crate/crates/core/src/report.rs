//! Machine-readable verification reports.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The claim holds but a printed intermediate value disagrees with the
    /// exact computation.
    Discrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub status: Status,
    pub details: Value,
}

impl Report {
    pub fn new(claim: impl Into<String>, status: Status, details: Value) -> Self {
        Self {
            claim: claim.into(),
            status,
            details,
        }
    }

    /// `Pass` when `ok`, `Fail` otherwise.
    pub fn check(claim: impl Into<String>, ok: bool, details: Value) -> Self {
        Self::new(claim, if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Combines sub-reports: any failure fails, otherwise any discrepancy
    /// marks the whole.
    pub fn combine(claim: impl Into<String>, parts: Vec<Report>) -> Self {
        let status = if parts.iter().any(Report::failed) {
            Status::Fail
        } else if parts.iter().any(|r| r.status == Status::Discrepancy) {
            Status::Discrepancy
        } else {
            Status::Pass
        };
        Self::new(
            claim,
            status,
            serde_json::to_value(parts).expect("reports serialize"),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
