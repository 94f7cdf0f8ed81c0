//! Coefficient traits shared by the polynomial and linear-algebra code.

use crate::rational::{self, Rational};
use num_traits::{One, Zero};
use std::fmt::Debug;

/// A commutative ring with exact equality.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + Zero + One + 'static {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Canonical text used for hashing and display.
    fn render(&self) -> String;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&rational::int(v))
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;
    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.times(&i))
    }
}

impl Scalar for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }
    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for f64 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        rational::to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}
