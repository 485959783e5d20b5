use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One named identity check. Failing checks carry a residual witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Option<String>,
    /// The identity being checked, written out.
    pub paper_ref: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, reference: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, residual: None, paper_ref: reference.into() }
    }

    pub fn fail(name: impl Into<String>, reference: impl Into<String>, residual: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, residual: Some(residual.into()), paper_ref: reference.into() }
    }

    pub fn skipped(name: impl Into<String>, reference: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skipped, residual: None, paper_ref: reference.into() }
    }

    /// Pass when `residual` is `None`.
    pub fn from_residual(name: impl Into<String>, reference: impl Into<String>, residual: Option<String>) -> Self {
        match residual {
            None => Self::pass(name, reference),
            Some(r) => Self::fail(name, reference, r),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Structured result of a suite or single verification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seed: Option<u64>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    passed: bool,
    checks: &'a [Check],
    seed: Option<u64>,
    elapsed_ms: u128,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), ..Default::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Sort checks by name and record the elapsed time since `start`.
    pub fn finish(&mut self, start: Instant) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.elapsed = start.elapsed();
    }

    /// True iff every check passed (and there is at least one).
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            suite: &self.suite,
            passed: self.passed(),
            checks: &self.checks,
            seed: self.seed,
            elapsed_ms: self.elapsed.as_millis(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    /// Human-readable text without timing, identical across runs.
    pub fn to_text_stable(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{tag}] {}  ({})\n", c.name, c.paper_ref));
            if let Some(r) = &c.residual {
                out.push_str(&format!("       residual: {r}\n"));
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        out.push_str(&format!(
            "suite {}: {} ({passed}/{} checks passed)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        if let Some(seed) = self.seed {
            out.push_str(&format!(", seed {seed}"));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {} ms", self.to_text_stable(), self.elapsed.as_millis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_does_not_pass() {
        assert!(!Report::new("x").passed());
    }

    #[test]
    fn json_carries_the_schema_fields() {
        let mut r = Report::new("demo").with_seed(9);
        r.push(Check::pass("b", "x = x"));
        r.push(Check::fail("a", "y = 0", "y"));
        r.finish(Instant::now());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], "demo");
        assert_eq!(v["passed"], false);
        assert_eq!(v["seed"], 9);
        assert!(v["elapsed_ms"].is_u64());
        assert_eq!(v["checks"][0]["name"], "a");
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["checks"][0]["residual"], "y");
        assert_eq!(v["checks"][1]["paper_ref"], "x = x");
    }

    #[test]
    fn stable_text_has_no_timing() {
        let mut r = Report::new("s");
        r.push(Check::pass("only", "1 = 1"));
        let text = r.to_text_stable();
        assert!(text.ends_with("suite s: PASS (1/1 checks passed)"));
        assert!(!text.contains("ms"));
    }
}
