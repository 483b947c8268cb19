//! The versioned JSON report emitted by every CLI check.

use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::witness::ScanReport;

/// Report schema version; bumped with the crate version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Violated,
    NotFoundWithinBounds,
}

impl Status {
    /// Process exit code for this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Violated | Status::NotFoundWithinBounds => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub payload: Vec<Value>,
    pub elapsed_ms: u64,
    pub version: String,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(check: &str, params: Value, status: Status, payload: Vec<Value>) -> Self {
        Report {
            check: check.into(),
            params,
            status,
            payload,
            elapsed_ms: 0,
            version: VERSION.into(),
            seed: None,
        }
    }

    /// Wraps a scan; the payload is the scan itself, so every violation it
    /// counts is listed there.
    pub fn from_scan(check: &str, params: Value, scan: &ScanReport) -> Self {
        let status = if scan.is_clean() {
            Status::Verified
        } else {
            Status::Violated
        };
        let mut r = Report::new(
            check,
            params,
            status,
            vec![serde_json::to_value(scan).expect("scan report serializes")],
        );
        r.elapsed_ms = duration_ms(scan.elapsed);
        r
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed_ms = duration_ms(elapsed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn duration_ms(d: Duration) -> u64 {
    u64::try_from(d.as_millis()).unwrap_or(u64::MAX)
}
