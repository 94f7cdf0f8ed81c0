//! Exact arithmetic substrate.
//!
//! Rationals come from `num-rational`; everything built on top of them
//! (the field ℚ(√3), rational-endpoint intervals, sparse multivariate
//! polynomials, resultants, Sturm sequences and Bernstein enclosures) lives
//! here.

pub mod bernstein;
pub mod exec;
pub mod expr;
pub mod interval;
pub mod linsolve;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod ratfunc;
pub mod scalar;
pub mod unipoly;
pub mod univar;

pub use interval::Interval;
pub use poly::{Poly, PolyError, RatPoly, SparsePoly};
pub use quad::QuadExt;
pub use rational::Rational;
pub use ratfunc::RatFunc;
pub use scalar::{Field, Scalar};
pub use unipoly::UniPoly;
pub use univar::QPoly;
