//! Command-line front end.

use crate::config::SuiteConfig;
use crate::report::{Report, Status};
use crate::suite::{run_suite, Stage};
use cartan_exact::Rational;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "cartan", version, about = "Exact and numerical verification of the Cartan cubic Hessian estimates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Invariance of P5 under the printed generators and the derived stabilizer.
    Invariance,
    /// Harmonicity, trace identity, characteristic coefficients and the registry.
    Spectrum,
    /// The quintic symmetric-function identity.
    Identity,
    /// Eigenvalue ordering and branch crossings.
    Ordering,
    /// Certified positivity of the g-functions, D and r.
    Positivity,
    /// Monte-Carlo test of the two-point ratio bound.
    Hyperbolicity,
    /// Weyl inequalities and the cubic comparison lemma.
    Lemmas,
    /// Everything, in order.
    All,
}

impl Command {
    pub fn stages(self) -> Vec<Stage> {
        match self {
            Command::Invariance => vec![Stage::Invariance],
            Command::Spectrum => vec![Stage::Harmonicity, Stage::Spectrum],
            Command::Identity => vec![Stage::Identity],
            Command::Ordering => vec![Stage::Ordering],
            Command::Positivity => vec![Stage::Positivity],
            Command::Hyperbolicity => vec![Stage::Hyperbolicity],
            Command::Lemmas => vec![Stage::Lemmas],
            Command::All => Stage::ALL.to_vec(),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    cartan_exact::rational::parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

#[derive(Args, Debug)]
pub struct Opts {
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Exponent delta in [0, 1); repeat for several values.
    #[arg(long = "delta", global = true, value_parser = parse_rational)]
    pub deltas: Vec<Rational>,
    /// Lower end of the eps range in the positivity box.
    #[arg(long, global = true, value_parser = parse_rational)]
    pub epsilon_min: Option<Rational>,
    /// Samples per delta for the hyperbolicity experiment.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Samples for each lemma check.
    #[arg(long, global = true)]
    pub lemma_samples: Option<usize>,
    /// Subdivision depth limit for the certifier.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, env = "CARTAN_WORKERS")]
    pub workers: Option<usize>,
    /// Output directory for report.json and certificates.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Opts {
    pub fn apply(&self, mut cfg: SuiteConfig) -> SuiteConfig {
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if !self.deltas.is_empty() {
            cfg.deltas = self.deltas.clone();
        }
        if let Some(e) = &self.epsilon_min {
            cfg.epsilon_min = e.clone();
        }
        if let Some(n) = self.samples {
            cfg.samples = n;
        }
        if let Some(n) = self.lemma_samples {
            cfg.lemma_samples = n;
        }
        if let Some(d) = self.depth {
            cfg.depth_limit = d;
        }
        if let Some(w) = self.workers {
            cfg.workers = w;
        }
        if let Some(o) = &self.out {
            cfg.output_dir = o.clone();
        }
        cfg
    }
}

pub fn render(report: &Report) -> String {
    let mut s = String::new();
    let width = report.body.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report.body.checks {
        let secs = report.run.timings.get(&c.name).copied().unwrap_or(0.0);
        s += &format!("{:<12} {:<width$} {:>8.2}s  {}\n", c.status.label(), c.name, secs, c.summary);
    }
    s += &format!(
        "verdict: {} ({} pass, {} discrepancy, {} fail)\n",
        report.body.verdict.label(),
        report.count(Status::Pass),
        report.count(Status::Discrepancy),
        report.count(Status::Fail)
    );
    s
}

/// Exit code for a finished report: 0 unless some check failed.
pub fn exit_code(report: &Report) -> i32 {
    if report.body.verdict == Status::Fail {
        1
    } else {
        0
    }
}

/// Parses `args` (including the program name) and runs. Returns the process
/// exit code: 0 on success, 1 if a check failed, 2 on usage, configuration or
/// I/O errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = cli.opts.apply(SuiteConfig::default());
    eprintln!(
        "seed {}, deltas [{}], output {}",
        cfg.seed,
        cfg.deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
        cfg.output_dir.display()
    );
    match run_suite(&cfg, &cli.command.stages()) {
        Ok(report) => {
            print!("{}", render(&report));
            exit_code(&report)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("cartan-cli-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn zero_samples_is_a_config_error() {
        let out = tmp("zero");
        let code = run(["cartan", "lemmas", "--lemma-samples", "0", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(!out.join("report.json").exists());
    }

    #[test]
    fn bad_delta_is_rejected() {
        assert_eq!(run(["cartan", "lemmas", "--delta", "1"]), 2);
        assert_eq!(run(["cartan", "lemmas", "--delta", "abc"]), 2);
    }

    #[test]
    fn unknown_subcommand_is_a_usage_error() {
        assert_eq!(run(["cartan", "frobnicate"]), 2);
    }

    #[test]
    fn invariance_reports_discrepancy_without_failing() {
        let out = tmp("inv");
        let code = run(["cartan", "invariance", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        let r = crate::report::read_report(&out.join("report.json")).unwrap();
        assert_eq!(r.check("invariance.printed_generators").unwrap().status, Status::Discrepancy);
        assert_eq!(r.check("invariance.derived_stabilizer").unwrap().status, Status::Pass);
        assert_eq!(r.body.verdict, Status::Pass);
        let _ = std::fs::remove_dir_all(out);
    }

    #[test]
    fn lemmas_run_small() {
        let out = tmp("lem");
        let code = run(["cartan", "lemmas", "--lemma-samples", "200", "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        let r = crate::report::read_report(&out.join("report.json")).unwrap();
        assert_eq!(r.body.config.seed, 7);
        assert_eq!(r.count(Status::Pass), 2);
        let _ = std::fs::remove_dir_all(out);
    }

    #[test]
    fn subcommands_cover_every_stage_once() {
        let mut seen: Vec<Stage> = [
            Command::Invariance,
            Command::Spectrum,
            Command::Identity,
            Command::Ordering,
            Command::Positivity,
            Command::Hyperbolicity,
            Command::Lemmas,
        ]
        .iter()
        .flat_map(|c| c.stages())
        .collect();
        seen.sort();
        assert_eq!(seen, Stage::ALL.to_vec());
        assert_eq!(Command::All.stages(), Stage::ALL.to_vec());
    }
}
