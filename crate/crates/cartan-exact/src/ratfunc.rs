//! Univariate rational functions over ℚ, kept in lowest terms with a monic
//! denominator.

use crate::poly::RatPoly;
use crate::rational::Rational;
use crate::univar::QPoly;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    var: String,
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(var: &str, num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        if n.is_zero() {
            d = QPoly::constant(Rational::one());
        }
        let lc = d.leading();
        n = n.scale(&lc.recip());
        d = d.scale(&lc.recip());
        RatFunc { var: var.to_string(), num: n, den: d }
    }

    pub fn from_poly(var: &str, p: QPoly) -> Self {
        RatFunc::new(var, p, QPoly::constant(Rational::one()))
    }

    pub fn constant(var: &str, c: Rational) -> Self {
        RatFunc::from_poly(var, QPoly::constant(c))
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn num_poly(&self) -> RatPoly {
        self.num.to_poly(&self.var)
    }

    pub fn den_poly(&self) -> RatPoly {
        self.den.to_poly(&self.var)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFunc::new(&self.var, self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RatFunc { var: self.var.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc::new(&self.var, self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| RatFunc::new(&self.var, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeffs()[0].is_one() {
            write!(f, "{}", self.num_poly())
        } else {
            write!(f, "({})/({})", self.num_poly(), self.den_poly())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn reduces_common_factors() {
        // (x² − 1)/(x − 1) = x + 1
        let r = RatFunc::new("x", QPoly::from_i64s(&[-1, 0, 1]), QPoly::from_i64s(&[-1, 1]));
        assert_eq!(r, RatFunc::from_poly("x", QPoly::from_i64s(&[1, 1])));
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = RatFunc::new("x", QPoly::from_i64s(&[1]), QPoly::from_i64s(&[2, 1]));
        let b = RatFunc::new("x", QPoly::from_i64s(&[0, 3]), QPoly::from_i64s(&[-1, 1]));
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        assert_eq!(s.eval(&int(3)), Some(int(1) / int(5) + int(9) / int(2)));
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::constant("x", int(1)));
    }
}
