//! Branch-and-bound certificates of strict positivity on boxes.
//!
//! A goal is either `f > min(mᵢ)` for polynomials `f, mᵢ`, or
//! `s − t√d > min(mᵢ)`. Boxes are bisected until, on every leaf, one margin
//! alternative is cleared by a Bernstein enclosure and by an independent
//! second-order Taylor interval bound. Only the interval bound is recorded
//! for replay.

pub mod bnb;
pub mod certificate;
pub mod domain;
pub mod goal;
pub mod replay;
pub mod targets;
pub mod taylor;

pub use bnb::{certify, certify_positive, certify_sqrt_diff, CertOutcome, CertifyOptions, Counterexample, DepthReport};
pub use certificate::{Certificate, LeafRecord};
pub use domain::{DomainBox, Path, Step};
pub use goal::{Goal, Margin, PointValue, SqrtDiffExpr};
pub use replay::verify_certificate;

use cartan_exact::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("variables of the goal are not covered by the box: {0}")]
    Variables(String),
    #[error("radicand is negative at {point} in box {bx}")]
    RadicandNegative { point: String, bx: String },
    #[error("radicand could not be certified nonnegative: {0}")]
    RadicandUncertified(String),
    #[error("certificate does not belong to this goal: {0}")]
    StructuralMismatch(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
