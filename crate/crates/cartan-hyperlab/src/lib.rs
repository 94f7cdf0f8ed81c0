//! Numerical evidence for the uniform hyperbolicity of `D²w` differences.
//!
//! For `w = P₅·|x|^{−1−δ}` the lab samples `M = D²w(a) − Oᵀ·D²w(b)·O` over
//! `a, b` in the ball and Haar-distributed `O`, checks the two-sided bound on
//! `−Λ₁/Λ₅`, and property-tests the two eigenvalue comparison lemmas the
//! argument relies on (Weyl-type bounds for `A − B` and the cubic comparison).
//!
//! Every experiment is driven by a master seed. Samples are grouped into fixed
//! chunks, each with its own ChaCha stream, so results do not depend on the
//! number of workers.

pub mod cubic;
pub mod experiment;
pub mod orthogonal;
pub mod ratio;
pub mod rng;
pub mod sample;
pub mod weyl;

pub use cubic::{cubic_comparison_check, CubicCheck, CubicPair};
pub use experiment::{run_experiment, DeltaReport, ExperimentConfig, FailureRecord};
pub use orthogonal::{random_orthogonal, Orthogonal5};
pub use ratio::{check_ratio_bound, ratio_constant, ratio_constant_f64, RatioCheck};
pub use sample::{delta_matrix_spectrum, HyperbolicitySample};
pub use weyl::{weyl_bounds_check, WeylCheck};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("sample point must be nonzero")]
    ZeroVector,
    #[error("inadmissible cubic pair: {0}")]
    Inadmissible(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Spectrum(#[from] cartan_spectrum::SpectrumError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
