//! Verification suite: runs every check against the Cartan cubic, writes a
//! deterministic JSON report with certificate files, and exposes the `cartan`
//! command-line tool.

pub mod checks;
pub mod cli;
pub mod config;
pub mod report;
pub mod suite;

pub use checks::{CheckError, Ctx};
pub use config::{ConfigError, SuiteConfig, Tolerances};
pub use report::{CheckResult, Report, Status};
pub use suite::{run_suite, Stage, SuiteError};
