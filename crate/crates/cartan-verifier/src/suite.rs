//! Runs a selection of checks, isolating each one, and assembles the report.

use crate::checks::{self, CheckFn, Ctx, CERTIFICATES, FILES};
use crate::config::{ConfigError, SuiteConfig};
use crate::report::{emit_report, master_verdict, CheckResult, Report, ReportBody, RunInfo, Status, REPORT_SCHEMA};
use cartan_exact::exec;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("I/O on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Groups of checks, in the order they run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Invariance,
    Harmonicity,
    Spectrum,
    Identity,
    Ordering,
    Positivity,
    Hyperbolicity,
    Lemmas,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Invariance,
        Stage::Harmonicity,
        Stage::Spectrum,
        Stage::Identity,
        Stage::Ordering,
        Stage::Positivity,
        Stage::Hyperbolicity,
        Stage::Lemmas,
    ];

    pub fn checks(self) -> Vec<(String, CheckFn)> {
        fn one(name: &str, f: fn(&Ctx) -> Result<CheckResult, checks::CheckError>) -> (String, CheckFn) {
            (name.to_string(), Box::new(f))
        }
        match self {
            Stage::Invariance => vec![
                one("invariance.printed_generators", checks::printed_generators),
                one("invariance.derived_stabilizer", checks::derived_stabilizer),
            ],
            Stage::Harmonicity => vec![
                one("harmonicity.laplacian", checks::harmonic),
                one("harmonicity.trace_identity", checks::trace_identity),
                one("harmonicity.printed_trace_constant", checks::printed_trace),
            ],
            Stage::Spectrum => vec![
                one("spectrum.coefficients", checks::coefficients),
                one("spectrum.printed_coefficients", checks::printed_coefficients),
                one("spectrum.registry", checks::registry_table),
            ],
            Stage::Identity => vec![
                one("identity.fit", checks::identity_fit),
                one("identity.printed_coefficients", checks::printed_identity),
                one("identity.residual", checks::identity_residual),
            ],
            Stage::Ordering => vec![
                one("ordering.grid", checks::ordering_grid),
                one("ordering.oddness", checks::ordering_oddness),
                one("ordering.crossings", checks::ordering_crossings),
            ],
            Stage::Positivity => checks::positivity_checks(),
            Stage::Hyperbolicity => vec![one("hyperbolicity.ratio_bound", checks::hyperbolicity)],
            Stage::Lemmas => vec![one("lemmas.weyl", checks::lemma_weyl), one("lemmas.cubic", checks::lemma_cubic)],
        }
    }
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "non-string panic payload".into())
}

/// Runs one check; errors and panics become FAIL results.
pub fn run_check(ctx: &Ctx, name: &str, f: &CheckFn) -> (CheckResult, f64) {
    let t = Instant::now();
    let r = match catch_unwind(AssertUnwindSafe(|| f(ctx))) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => CheckResult::new(name, Status::Fail, format!("error: {e}")),
        Err(p) => CheckResult::new(name, Status::Fail, format!("panic: {}", panic_text(p))),
    };
    (r, t.elapsed().as_secs_f64())
}

fn strings(r: &CheckResult, key: &str) -> Vec<String> {
    r.detail(key)
        .and_then(|v| v.as_array())
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

/// Runs the given stages, writes `report.json` under the output directory and
/// returns the report.
pub fn run_suite(cfg: &SuiteConfig, stages: &[Stage]) -> Result<Report, SuiteError> {
    cfg.validate()?;
    let out: PathBuf = cfg.output_dir.clone();
    std::fs::create_dir_all(&out).map_err(|source| SuiteError::Io { path: out.display().to_string(), source })?;
    let ctx = Ctx::new(cfg);
    let (results, timings) = exec::with_workers(cfg.workers, || {
        let mut results = Vec::new();
        let mut timings = BTreeMap::new();
        for stage in stages {
            for (name, f) in stage.checks() {
                let (r, secs) = run_check(&ctx, &name, &f);
                timings.insert(name, secs);
                results.push(r);
            }
        }
        (results, timings)
    });
    let mut certificates: Vec<String> = results.iter().flat_map(|r| strings(r, CERTIFICATES)).collect();
    let mut artifacts: Vec<String> = results.iter().flat_map(|r| strings(r, FILES)).collect();
    certificates.sort();
    artifacts.push("report.json".into());
    artifacts.sort();
    let report = Report {
        body: ReportBody {
            schema: REPORT_SCHEMA,
            config: cfg.echo(),
            verdict: master_verdict(&results),
            checks: results,
            certificates,
            artifacts,
        },
        run: RunInfo { output_dir: out.display().to_string(), timings },
    };
    let path = out.join("report.json");
    emit_report(&report, &path).map_err(|source| SuiteError::Io { path: path.display().to_string(), source })?;
    Ok(report)
}
