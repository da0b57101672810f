//! The report envelope every subcommand fills in: command echo, input
//! digests, per-check lines, a structured result payload, and the overall
//! status. One envelope serializes to the machine-readable JSON form
//! (`--json`) and renders to the human-readable text form; identical
//! inputs produce identical JSON except for the wall-time field.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub bytes: usize,
    /// FNV-1a 64-bit digest of the raw file bytes, as fixed-width hex.
    pub digest: String,
}

impl InputRecord {
    pub fn new(path: &str, contents: &str) -> Self {
        InputRecord {
            path: path.to_string(),
            bytes: contents.len(),
            digest: fnv1a64(contents.as_bytes()),
        }
    }
}

/// One named check with its outcome; `residual` for numerical checks,
/// `detail` for witnesses and failure accounts.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        CheckLine {
            name: name.into(),
            passed,
            residual: None,
            detail: None,
        }
    }

    pub fn residual(mut self, value: f64) -> Self {
        self.residual = Some(value);
        self
    }

    pub fn detail(mut self, value: impl Into<String>) -> Self {
        self.detail = Some(value.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub tolerance: f64,
    pub checks: Vec<CheckLine>,
    pub result: Value,
    pub status: Status,
    pub wall_ms: u128,
    #[serde(skip)]
    pub human: Vec<String>,
}

impl Report {
    /// Seals the envelope: the overall status is pass exactly when every
    /// check passed, and the wall time is measured from `started`.
    pub fn finish(
        command: String,
        inputs: Vec<InputRecord>,
        tolerance: f64,
        checks: Vec<CheckLine>,
        result: Value,
        human: Vec<String>,
        started: Instant,
    ) -> Self {
        let status = if checks.iter().all(|c| c.passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            command,
            inputs,
            tolerance,
            checks,
            result,
            status,
            wall_ms: started.elapsed().as_millis(),
            human,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for input in &self.inputs {
            let _ = writeln!(
                out,
                "  input {} ({} B, fnv1a64 {})",
                input.path, input.bytes, input.digest
            );
        }
        let _ = writeln!(out, "  tolerance {:e}", self.tolerance);
        for check in &self.checks {
            let mark = if check.passed { " pass " } else { " FAIL " };
            let mut line = format!("  [{mark}] {}", check.name);
            if let Some(residual) = check.residual {
                let _ = write!(line, " (residual {residual:.2e})");
            }
            if let Some(detail) = &check.detail {
                let _ = write!(line, " — {detail}");
            }
            let _ = writeln!(out, "{line}");
        }
        for line in &self.human {
            let _ = writeln!(out, "  {line}");
        }
        let verdict = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(out, "  overall {verdict} in {} ms", self.wall_ms);
        out
    }
}

pub fn fnv1a64(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_is_pass_exactly_when_every_check_passes() {
        let ok = Report::finish(
            "t".into(),
            Vec::new(),
            1e-9,
            vec![CheckLine::new("a", true), CheckLine::new("b", true)],
            Value::Null,
            Vec::new(),
            Instant::now(),
        );
        assert_eq!(ok.status, Status::Pass);
        let bad = Report::finish(
            "t".into(),
            Vec::new(),
            1e-9,
            vec![CheckLine::new("a", true), CheckLine::new("b", false)],
            Value::Null,
            Vec::new(),
            Instant::now(),
        );
        assert_eq!(bad.status, Status::Fail);
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        assert_eq!(fnv1a64(b""), "cbf29ce484222325");
        assert_ne!(fnv1a64(b"a"), fnv1a64(b"b"));
        assert_eq!(fnv1a64(b"abc"), fnv1a64(b"abc"));
    }

    #[test]
    fn json_round_trips_and_human_form_shows_every_check() {
        let report = Report::finish(
            "check x.json".into(),
            vec![InputRecord::new("x.json", "{}")],
            1e-9,
            vec![
                CheckLine::new("unit", true).residual(0.0),
                CheckLine::new("associativity", false).detail("at [1, 1, 1]"),
            ],
            serde_json::json!({"rank": 2}),
            vec!["rank 2".into()],
            Instant::now(),
        );
        let parsed: Value = serde_json::from_str(&report.to_json()).expect("valid json");
        assert_eq!(parsed["status"], "fail");
        assert_eq!(parsed["checks"][1]["detail"], "at [1, 1, 1]");
        let text = report.render_human();
        assert!(text.contains("unit"));
        assert!(text.contains("FAIL ] associativity"));
        assert!(text.contains("overall FAIL"));
    }
}
