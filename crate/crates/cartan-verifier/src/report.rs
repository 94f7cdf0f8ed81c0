//! Check results and the versioned report document.

use crate::config::ConfigEcho;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::path::Path;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// A printed formula disagrees with the recomputation. A finding, not a
    /// failure of the build.
    Discrepancy,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub details: Map<String, Value>,
}

impl CheckResult {
    pub fn new(name: &str, status: Status, summary: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), status, summary: summary.into(), details: Map::new() }
    }

    pub fn pass_if(name: &str, ok: bool, summary: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, summary)
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), v.into());
        self
    }

    /// Floats that JSON cannot hold (infinities, NaN) are stored as text.
    pub fn with_f64(self, key: &str, x: f64) -> Self {
        if x.is_finite() {
            self.with(key, x)
        } else {
            self.with(key, x.to_string())
        }
    }

    pub fn detail(&self, key: &str) -> Option<&Value> {
        self.details.get(key)
    }
}

/// Everything that must be reproducible: two runs with the same
/// configuration produce identical bodies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBody {
    pub schema: u32,
    pub config: ConfigEcho,
    pub checks: Vec<CheckResult>,
    /// Certificate files, relative to the output directory, sorted.
    pub certificates: Vec<String>,
    /// Other files produced by the run, relative to the output directory.
    pub artifacts: Vec<String>,
    pub verdict: Status,
}

/// Run-specific data kept out of the body.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub output_dir: String,
    /// Seconds per check.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub body: ReportBody,
    pub run: RunInfo,
}

/// PASS unless some check failed; discrepancies and skips do not count.
pub fn master_verdict(checks: &[CheckResult]) -> Status {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}

impl Report {
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report body serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.body.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, s: Status) -> usize {
        self.body.checks.iter().filter(|c| c.status == s).count()
    }
}

pub fn emit_report(report: &Report, path: &Path) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, report.to_json() + "\n")
}

pub fn read_report(path: &Path) -> std::io::Result<Report> {
    let text = std::fs::read_to_string(path)?;
    Report::from_json(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SuiteConfig;

    fn sample() -> Report {
        let checks = vec![
            CheckResult::new("a", Status::Pass, "ok").with("n", 3).with_f64("x", 0.1 + 0.2),
            CheckResult::new("b", Status::Discrepancy, "printed differs").with_f64("inf", f64::INFINITY),
        ];
        let verdict = master_verdict(&checks);
        Report {
            body: ReportBody {
                schema: REPORT_SCHEMA,
                config: SuiteConfig::default().echo(),
                checks,
                certificates: vec!["certificates/g3_L.json".into()],
                artifacts: vec![],
                verdict,
            },
            run: RunInfo { output_dir: "out".into(), timings: [("a".to_string(), 1.0 / 3.0)].into_iter().collect() },
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let r = sample();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn discrepancy_does_not_fail_the_verdict() {
        let r = sample();
        assert_eq!(r.body.verdict, Status::Pass);
        assert_eq!(r.body.schema, REPORT_SCHEMA);
        let mut checks = r.body.checks.clone();
        checks.push(CheckResult::new("c", Status::Fail, "broken"));
        assert_eq!(master_verdict(&checks), Status::Fail);
    }

    #[test]
    fn body_excludes_run_info() {
        let mut a = sample();
        let b = a.clone();
        a.run.timings.insert("z".into(), 9.0);
        a.run.output_dir = "elsewhere".into();
        assert_eq!(a.body_json(), b.body_json());
        assert!(!a.body_json().contains("elsewhere"));
    }

    proptest::proptest! {
        #[test]
        fn finite_floats_round_trip_bitwise(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let r = CheckResult::new("x", Status::Pass, "").with_f64("v", x);
            let back: CheckResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
            proptest::prop_assert_eq!(back.detail("v").and_then(Value::as_f64).map(f64::to_bits), Some(x.to_bits()));
        }

        #[test]
        fn verdict_fails_iff_some_check_fails(codes in proptest::collection::vec(0u8..4, 0..12)) {
            let all = [Status::Pass, Status::Fail, Status::Discrepancy, Status::Skipped];
            let checks: Vec<CheckResult> = codes.iter().map(|&c| CheckResult::new("c", all[c as usize], "")).collect();
            let fail = codes.contains(&1);
            proptest::prop_assert_eq!(master_verdict(&checks) == Status::Fail, fail);
        }
    }
}
