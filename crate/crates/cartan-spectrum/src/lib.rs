//! Spectrum of `D²w`, `w = P₅·|x|^{−1−δ}`, at the normal form, the
//! eigenvalue identity satisfied by `w`, the partial derivatives of the
//! resulting equation, and adjudication of printed formulas against the
//! recomputation.
//!
//! Symbolic work is done in `ε = 1 − δ`; `p` is the normal-form coordinate
//! and `b = p(p² − 3)`.

pub mod charpoly;
pub mod gfun;
pub mod hessian;
pub mod identity;
pub mod ordering;
pub mod registry;
pub mod symmat;

pub use charpoly::{Branch, NormalFormAlgebra, Quadratic, Resultants};
pub use ordering::{ordered_spectrum, ordered_spectrum_exact, OrderedSpectrum, QSurd};
pub use symmat::SymMatrix5;

use cartan_exact::expr::ExprError;
use cartan_exact::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("the Hessian is not defined at the origin")]
    ZeroVector,
    #[error("negative discriminant on branch {branch} at p = {p}")]
    NegativeDiscriminant { branch: &'static str, p: String },
    #[error("structure: {0}")]
    Structure(String),
    #[error("singular fit system (rank {rank} of 3)")]
    SingularFit { rank: usize },
    #[error("registry: {0}")]
    Registry(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
