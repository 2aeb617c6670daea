//! Structured results: one [`Report`] per invocation, serialised as JSON.

use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Which result of the source material the check reproduces.
    pub paper_ref: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Session {
    pub command: String,
    pub n: Option<usize>,
    pub field: String,
    pub order: String,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub session: Session,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(session: Session) -> Self {
        Report { session, checks: Vec::new() }
    }

    /// Fail if any check failed, else inconclusive if any was, else pass.
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable report")
    }
}

/// Times `f`, which returns `(status, expected, actual)`.
pub fn timed(name: &str, paper_ref: &str, f: impl FnOnce() -> (Status, String, String)) -> Check {
    let start = Instant::now();
    let (status, expected, actual) = f();
    Check {
        name: name.to_string(),
        paper_ref: paper_ref.to_string(),
        status,
        expected,
        actual,
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}
