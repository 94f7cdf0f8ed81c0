//! The Cartan cubic `P₅` on ℝ⁵, one-parameter families of orthogonal
//! matrices acting on it, and the numeric reduction of unit vectors to the
//! normal form `(p, 0, q, 0, 0)`.
//!
//! Coordinates are ordered `(x1, x2, z1, z2, z3)` throughout.

pub mod cubic;
pub mod group;
pub mod reduce;
pub mod stabilizer;

pub use cubic::{build_p5, CartanCubic, VARS};
pub use group::{check_invariance, CsMatrix, Generator, InvarianceVerdict};
pub use reduce::{reduce_to_normal_form, NormalForm, ReduceConfig};
pub use stabilizer::Stabilizer;

use cartan_exact::PolyError;
use thiserror::Error;

pub type Mat5 = nalgebra::Matrix5<f64>;
pub type Vec5 = nalgebra::Vector5<f64>;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("(c, s) = ({c}, {s}) is not on the unit circle")]
    NotOnCircle { c: String, s: String },
    #[error("input has norm {norm}, expected 1 within {tol}")]
    NotUnit { norm: f64, tol: f64 },
    #[error("no convergence after {attempts} starts; best residual {best_residual:e}")]
    NoConvergence { attempts: usize, best_residual: f64 },
    #[error("cubic check failed: {0}")]
    BadCubic(String),
    #[error("stabilizer algebra: {0}")]
    Algebra(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
