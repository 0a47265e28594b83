//! Ring specifications, graph exporters, and named verification suites.

mod export;
mod spec;
mod suites;

use std::fmt;

use serde::Serialize;

use crate::error::Error;

pub use export::{export_graph, relation_summary, GraphFormat, GraphKind, RelationSummary};
pub use spec::{parse_ring_spec, RingSpec};
pub use suites::{run_suite, SuiteConfig, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: u32,
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Set when some check failed with a theorem violation.
    pub theorem_violation: bool,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { format: 1, suite: suite.to_string(), checks: Vec::new(), passed: true, theorem_violation: false }
    }

    /// Records `expected` against `actual`; passes on equality.
    pub fn check_eq<T: fmt::Display + PartialEq>(&mut self, description: impl Into<String>, expected: T, actual: T) {
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        self.push(description, expected.to_string(), actual.to_string(), status);
    }

    pub fn check(&mut self, description: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, ok: bool) {
        self.push(description, expected.into(), actual.into(), if ok { Status::Pass } else { Status::Fail });
    }

    /// Records a failed check for an error raised while computing `description`.
    pub fn error(&mut self, description: impl Into<String>, expected: impl Into<String>, err: &Error) {
        self.theorem_violation |= err.is_theorem_violation();
        self.push(description, expected.into(), format!("error: {err}"), Status::Fail);
    }

    fn push(&mut self, description: impl Into<String>, expected: String, actual: String, status: Status) {
        self.passed &= status == Status::Pass;
        self.checks.push(Check { description: description.into(), expected, actual, status });
    }

    pub fn merge(&mut self, other: Report) {
        self.passed &= other.passed;
        self.theorem_violation |= other.theorem_violation;
        for mut c in other.checks {
            c.description = format!("{}: {}", other.suite, c.description);
            self.checks.push(c);
        }
    }

    pub fn status(&self) -> Status {
        if self.passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            writeln!(f, "  {} {}: expected {}, got {}", c.status, c.description, c.expected, c.actual)?;
        }
        write!(f, "{} ({} checks)", self.status(), self.checks.len())
    }
}
