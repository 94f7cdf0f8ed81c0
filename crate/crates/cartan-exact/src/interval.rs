//! Closed intervals with rational endpoints.
//!
//! Endpoints are exact, so no outward rounding is needed: every operation
//! returns the tightest enclosure of the pointwise image, except products of
//! dependent operands, which is the usual interval overestimation.

use crate::rational::Rational;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval with lo > hi");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn radius(&self) -> Rational {
        self.width() / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        crate::rational::to_f64(&self.lo) <= x && x <= crate::rational::to_f64(&self.hi)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            Interval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }

    /// Tight power: even powers of an interval straddling zero start at zero.
    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(Rational::from_integer(1.into()));
        }
        let lo_k = num_traits::pow(self.lo.clone(), k as usize);
        let hi_k = num_traits::pow(self.hi.clone(), k as usize);
        if k % 2 == 1 {
            return Interval { lo: lo_k, hi: hi_k };
        }
        if !self.lo.is_negative() {
            Interval { lo: lo_k, hi: hi_k }
        } else if !self.hi.is_positive() {
            Interval { lo: hi_k, hi: lo_k }
        } else {
            Interval { lo: Rational::zero(), hi: lo_k.max(hi_k) }
        }
    }

    /// Left and right halves.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo.clone(), hi: m.clone() },
            Interval { lo: m, hi: self.hi.clone() },
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
