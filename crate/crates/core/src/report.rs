//! Check records and the JSON run report.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIP")]
    Skip,
    #[serde(rename = "PREMISE-NOT-MET")]
    PremiseNotMet,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::PremiseNotMet => "PREMISE-NOT-MET",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub value: Value,
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, value: impl Into<Value>, tol: Option<f64>) -> Self {
        Check {
            name: name.into(),
            status,
            value: value.into(),
            tol,
            note: None,
        }
    }

    /// PASS iff `value ≤ tol`; NaN fails.
    pub fn bound(name: impl Into<String>, value: f64, tol: f64) -> Self {
        let status = if value <= tol { Status::Pass } else { Status::Fail };
        Check::new(name, status, value, Some(tol))
    }

    /// Record without a pass/fail criterion (informational values).
    pub fn info(name: impl Into<String>, value: impl Into<Value>) -> Self {
        Check::new(name, Status::Pass, value, None)
    }

    pub fn skip(name: impl Into<String>, note: impl Into<String>) -> Self {
        Check::new(name, Status::Skip, Value::Null, None).with_note(note)
    }

    pub fn premise_not_met(name: impl Into<String>, note: impl Into<String>) -> Self {
        Check::new(name, Status::PremiseNotMet, Value::Null, None).with_note(note)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_value(mut self, value: impl Into<Value>) -> Self {
        self.value = value.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            input_digest: None,
            checks: Vec::new(),
        }
    }

    pub fn with_digest(mut self, digest: String) -> Self {
        self.input_digest = Some(digest);
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    /// 1 if any check failed, else 0.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_json() {
        let mut r = RunReport::new("verify --catalog circle").with_digest("abc".into());
        r.push(Check::bound("residual", 1e-9, 1e-6));
        r.push(Check::premise_not_met("corollary 2", "planar"));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::bound("nan", f64::NAN, 1.0));
        assert_eq!(r.exit_code(), 1);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][1]["status"], "PREMISE-NOT-MET");
        assert_eq!(v["checks"][2]["value"], Value::Null);
        assert_eq!(v["input_digest"], "abc");
        assert_eq!(r.find("residual").unwrap().status, Status::Pass);
    }
}
