use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
        }
    }
}

/// A named comparison of a computed value against a threshold.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    /// Passes when `value <= threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            pass: value <= threshold,
            value,
            threshold,
        }
    }

    /// Passes when `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            pass: value > threshold,
            value,
            threshold,
        }
    }

    /// Boolean condition reported as value 1/0 against threshold 1.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            pass: ok,
            value: if ok { 1.0 } else { 0.0 },
            threshold: 1.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Value::Object(Default::default()),
            results: Value::Object(Default::default()),
            checks: Vec::new(),
            status: Status::Pass,
            error: None,
        }
    }

    pub fn input(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.inputs {
            map.insert(key.to_string(), value);
        }
    }

    pub fn result(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.to_string(), value);
        }
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Sets the status from the checks: pass iff every check passes.
    pub fn settle(&mut self) {
        if self.status != Status::InputError {
            self.status = if self.checks.iter().all(|c| c.pass) {
                Status::Pass
            } else {
                Status::Fail
            };
        }
    }

    pub fn fail_with(&mut self, message: String) {
        self.status = Status::Fail;
        self.error = Some(message);
    }

    pub fn input_error(&mut self, message: String) {
        self.status = Status::InputError;
        self.error = Some(message);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::InputError => "input_error",
        };
        let _ = writeln!(out, "{}: {}", self.command, status);
        if let Some(err) = &self.error {
            let _ = writeln!(out, "  error: {err}");
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  [{}] {} = {:e} (threshold {:e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.threshold
            );
        }
        out
    }
}
