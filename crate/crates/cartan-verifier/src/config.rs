//! Suite configuration. Every tolerance and sample count used by a check
//! lives here, with the defaults the checks are specified against.

use cartan_exact::rational::{fmt_rational, int, rat, to_f64};
use cartan_exact::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("delta {0} is outside [0, 1)")]
    DeltaRange(String),
    #[error("epsilon-min {0} is outside (0, 1)")]
    EpsilonRange(String),
    #[error("depth limit must be positive")]
    Depth,
    #[error("margin {0} must be a positive rational")]
    Margin(String),
    #[error("unknown margin name {0} (expected g1, g2 or g3)")]
    MarginName(String),
    #[error("tolerance {0} must be positive")]
    Tolerance(&'static str),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Closed-form against numeric eigenvalues, and characteristic
    /// coefficients against elementary symmetric functions.
    pub eigen: f64,
    /// Relative residual of the eigenvalue identity at floating points.
    pub identity: f64,
    /// Trace identity and the `4Λ₁ + Λ₅ ≥ 0` step.
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eigen: 1e-10, identity: 1e-9, trace: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Values of `δ` for the sampling experiment and the crossing checks.
    pub deltas: Vec<Rational>,
    /// Lower end of the `ε` range of the positivity boxes.
    pub epsilon_min: Rational,
    /// Hyperbolicity samples per `δ`.
    pub samples: usize,
    /// Random pairs for each of the two matrix lemmas.
    pub lemma_samples: usize,
    pub depth_limit: usize,
    /// Claimed constants of the theorem bounds, by name (`g1`, `g2`, `g3`).
    pub margins: BTreeMap<String, Rational>,
    /// Worker threads, `0` for the default pool.
    pub workers: usize,
    pub output_dir: PathBuf,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20_240_601,
            deltas: vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4)],
            epsilon_min: rat(1, 20),
            samples: 100_000,
            lemma_samples: 10_000,
            depth_limit: 24,
            margins: [("g1", int(2)), ("g2", int(15)), ("g3", int(1))].into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            workers: 0,
            output_dir: PathBuf::from("cartan-out"),
            tolerances: Tolerances::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples == 0 || self.lemma_samples == 0 {
            return Err(ConfigError::NoSamples);
        }
        for d in &self.deltas {
            let x = to_f64(d);
            if !(0.0..1.0).contains(&x) || *d >= int(1) {
                return Err(ConfigError::DeltaRange(fmt_rational(d)));
            }
        }
        if self.epsilon_min <= int(0) || self.epsilon_min >= int(1) {
            return Err(ConfigError::EpsilonRange(fmt_rational(&self.epsilon_min)));
        }
        if self.depth_limit == 0 {
            return Err(ConfigError::Depth);
        }
        for (k, v) in &self.margins {
            if !["g1", "g2", "g3"].contains(&k.as_str()) {
                return Err(ConfigError::MarginName(k.clone()));
            }
            if *v <= int(0) {
                return Err(ConfigError::Margin(k.clone()));
            }
        }
        let t = &self.tolerances;
        for (name, v) in [("eigen", t.eigen), ("identity", t.identity), ("trace", t.trace)] {
            if !(v > 0.0) {
                return Err(ConfigError::Tolerance(name));
            }
        }
        Ok(())
    }

    /// The configuration as recorded in the report: rationals as exact
    /// strings, and without the output directory.
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            seed: self.seed,
            deltas: self.deltas.iter().map(fmt_rational).collect(),
            epsilon_min: fmt_rational(&self.epsilon_min),
            samples: self.samples,
            lemma_samples: self.lemma_samples,
            depth_limit: self.depth_limit,
            margins: self.margins.iter().map(|(k, v)| (k.clone(), fmt_rational(v))).collect(),
            workers: self.workers,
            tolerances: self.tolerances.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub deltas: Vec<String>,
    pub epsilon_min: String,
    pub samples: usize,
    pub lemma_samples: usize,
    pub depth_limit: usize,
    pub margins: BTreeMap<String, String>,
    pub workers: usize,
    pub tolerances: Tolerances,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        assert_eq!(SuiteConfig::default().validate(), Ok(()));
    }

    #[test]
    fn zero_samples_rejected() {
        let c = SuiteConfig { samples: 0, ..Default::default() };
        assert_eq!(c.validate(), Err(ConfigError::NoSamples));
    }

    #[test]
    fn out_of_range_values_rejected() {
        let c = SuiteConfig { deltas: vec![int(1)], ..Default::default() };
        assert!(matches!(c.validate(), Err(ConfigError::DeltaRange(_))));
        let c = SuiteConfig { epsilon_min: int(0), ..Default::default() };
        assert!(matches!(c.validate(), Err(ConfigError::EpsilonRange(_))));
        let mut c = SuiteConfig::default();
        c.margins.insert("g7".into(), int(1));
        assert!(matches!(c.validate(), Err(ConfigError::MarginName(_))));
    }
}
