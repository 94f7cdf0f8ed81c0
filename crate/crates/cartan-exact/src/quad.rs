//! The real quadratic field ℚ(√3).

use crate::interval::Interval;
use crate::rational::{self, Rational};
use crate::scalar::{Field, Scalar};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

/// `a + b·√3` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

/// Bits of precision for the rational enclosure of √3 (width ≤ 2⁻¹¹⁰ < 10⁻³³).
pub const SQRT3_BITS: u32 = 110;

pub fn sqrt3_enclosure() -> &'static (Rational, Rational) {
    static CELL: OnceLock<(Rational, Rational)> = OnceLock::new();
    CELL.get_or_init(|| rational::sqrt_enclosure(&rational::int(3), SQRT3_BITS))
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero() }
    }

    pub fn sqrt3() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate `a − b√3`.
    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(3.into()) * &self.b * &self.b
    }

    /// Exact sign of the real number `a + b√3`.
    pub fn signum(&self) -> i32 {
        let sa = rational::sign(&self.a);
        let sb = rational::sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with 3b²
        match (&self.a * &self.a).cmp(&(Rational::from_integer(3.into()) * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }

    /// Rational enclosure of the real value.
    pub fn enclose(&self) -> Interval {
        if self.b.is_zero() {
            return Interval::point(self.a.clone());
        }
        let (lo, hi) = sqrt3_enclosure();
        let s = Interval::new(lo.clone(), hi.clone());
        Interval::point(self.a.clone()).add(&s.scale(&self.b))
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * 3f64.sqrt()
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Scalar::render(self))
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::rational(a)
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        if self.b.is_zero() && o.b.is_zero() {
            return QuadExt::rational(&self.a * &o.a);
        }
        let three = Rational::from_integer(3.into());
        QuadExt {
            a: &self.a * &o.a + three * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        &self + &o
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        &self * &o
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt { a: Rational::one(), b: Rational::zero() }
    }
}

impl Scalar for QuadExt {
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
        QuadExt::rational(r.clone())
    }
    fn to_f64(&self) -> f64 {
        QuadExt::to_f64(self)
    }
    fn render(&self) -> String {
        let a = Scalar::render(&self.a);
        if self.b.is_zero() {
            return a;
        }
        let b = Scalar::render(&self.b.abs());
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            return format!("{lead}{b}*sqrt(3)");
        }
        format!("({a}{sign}{b}*sqrt(3))")
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            // a² = 3b² has no rational solution besides 0
            return None;
        }
        let c = self.conj();
        Some(QuadExt { a: c.a / &n, b: c.b / n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn q(a: Rational, b: Rational) -> QuadExt {
        QuadExt::new(a, b)
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = QuadExt::sqrt3();
        assert_eq!(&s * &s, QuadExt::rational(int(3)));
    }

    #[test]
    fn inverse_round_trips() {
        let x = q(rat(2, 3), rat(-5, 7));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, QuadExt::one());
        assert!(QuadExt::zero().inv().is_none());
    }

    #[test]
    fn sign_is_exact() {
        assert_eq!(q(int(2), int(-1)).signum(), 1); // 2 − √3
        assert_eq!(q(int(-2), int(1)).signum(), -1);
        assert_eq!(q(int(1), int(-1)).signum(), -1); // 1 − √3
        assert_eq!(q(int(7), int(-4)).signum(), 1); // 49 > 48
        assert_eq!(q(int(0), int(0)).signum(), 0);
    }

    #[test]
    fn enclosure_contains_value() {
        let x = q(rat(1, 2), rat(3, 2));
        let e = x.enclose();
        let v = x.to_f64();
        assert!(rational::to_f64(&e.lo) <= v && v <= rational::to_f64(&e.hi));
        assert!(e.width() < rat(1, 1_000_000_000) * rat(1, 1_000_000_000) * rat(1, 1_000_000_000_000));
    }

    #[test]
    fn zero_iff_both_parts_zero() {
        assert!(q(int(0), int(0)).is_zero());
        assert!(!q(int(0), int(1)).is_zero());
    }
}
