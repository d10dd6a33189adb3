//! Command reports and the JSON envelope shared by every subcommand.

use std::fmt;

use serde_json::{json, Map, Value};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, witness: Value) -> Self {
        Check {
            name: name.into(),
            status,
            witness,
        }
    }
}

/// Everything a subcommand produced: the human-readable text, the JSON
/// pieces, and an optional SVG artifact.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub flags: Map<String, Value>,
    pub result: Value,
    pub checks: Vec<Check>,
    pub text: String,
    pub svg: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, m: Option<u64>, n: Option<u64>) -> Self {
        Report {
            command,
            m,
            n,
            flags: Map::new(),
            result: Value::Null,
            checks: Vec::new(),
            text: String::new(),
            svg: None,
        }
    }

    pub fn flag(&mut self, name: &str, value: impl Into<Value>) {
        self.flags.insert(name.to_owned(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, witness: Value) {
        self.checks.push(Check::new(name, status, witness));
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            EXIT_FAILED_CHECK
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "status": c.status.name(), "witness": c.witness}))
            .collect();
        json!({
            "command": self.command,
            "inputs": {"m": self.m, "n": self.n, "flags": self.flags},
            "result": self.result,
            "checks": checks,
        })
    }
}

/// An invalid invocation; always exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<quadres::Error> for UsageError {
    fn from(e: quadres::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_shape() {
        let mut r = Report::new("trace", Some(5), Some(7));
        r.flag("json", true);
        r.check("endpoint", Status::Pass, json!([7, 5]));
        let v = r.to_json();
        assert_eq!(v["command"], "trace");
        assert_eq!(v["inputs"]["m"], 5);
        assert_eq!(v["inputs"]["flags"]["json"], true);
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(r.exit_code(), EXIT_OK);
        r.check("other", Status::Fail, Value::Null);
        assert_eq!(r.exit_code(), EXIT_FAILED_CHECK);
    }
}
