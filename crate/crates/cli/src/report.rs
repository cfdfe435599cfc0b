//! Verification reports produced by `verify-all`.

use serde::Serialize;
use serde_json::Value;

use crate::config::Config;
use crate::{md_cell, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check_id: String,
    /// The claim the check establishes, in words.
    pub claim_ref: String,
    pub status: Status,
    pub details: Value,
    /// Only present with `--timing`, so that default output is reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub config: Config,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn new(config: Config, reports: Vec<VerificationReport>) -> SuiteReport {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            command: "verify-all",
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            config,
            reports,
        }
    }

    pub fn failing_ids(&self) -> Vec<String> {
        self.reports
            .iter()
            .filter(|r| r.status == Status::Fail)
            .map(|r| r.check_id.clone())
            .collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Check | Status | Claim |\n|---|---|---|\n");
        for r in &self.reports {
            out.push_str(&format!("| {} | {} | {} |\n", r.check_id, r.status.as_str(), md_cell(&r.claim_ref)));
        }
        out.push_str(&format!(
            "\n{} passed, {} failed, {} skipped\n",
            self.passed, self.failed, self.skipped
        ));
        out
    }
}
