//! Check results and their JSON and text renderings.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One row of a report. `elapsed` is in milliseconds.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub statement: String,
    pub witness: Option<Value>,
    pub elapsed: u64,
}

pub fn to_json(results: &[CheckResult]) -> String {
    serde_json::to_string_pretty(results).expect("results serialize")
}

pub fn to_text(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "{:<7} {:<width$} {:>7} ms  {}\n",
            r.status.as_str(),
            r.id,
            r.elapsed,
            r.statement
        ));
    }
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    out.push_str(&format!("{} checks, {} failed\n", results.len(), failed));
    out
}

/// Process exit code: nonzero iff some check failed.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    i32::from(results.iter().any(|r| r.status == Status::Fail))
}
