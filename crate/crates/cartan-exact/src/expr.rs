//! A small formula language for printed algebraic expressions.
//!
//! Grammar: `+ - * / ^` (non-negative integer exponents), parentheses,
//! rational literals, identifiers and `sqrt(…)`. Values are exact forms
//! `(s + t·√d)/den` with polynomial `s, t, d, den`; at most one radicand per
//! expression besides √3, which is absorbed into the coefficient field.

use crate::poly::{Poly, PolyError, SparsePoly};
use crate::quad::QuadExt;
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("two different radicands in one expression")]
    MixedRadicands,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `(s + t·√d)/den`. When `d` is `None`, `t` is zero.
#[derive(Clone, Debug)]
pub struct Surd {
    pub s: SparsePoly,
    pub t: SparsePoly,
    pub d: Option<SparsePoly>,
    pub den: SparsePoly,
}

fn one() -> SparsePoly {
    SparsePoly::constant(QuadExt::one())
}

impl Surd {
    pub fn poly(p: SparsePoly) -> Self {
        Surd { s: p, t: SparsePoly::zero(), d: None, den: one() }
    }

    pub fn constant(c: QuadExt) -> Self {
        Surd::poly(SparsePoly::constant(c))
    }

    /// `(s + t√d)/den`, normalizing the radicand.
    pub fn new(s: SparsePoly, t: SparsePoly, d: Option<SparsePoly>, den: SparsePoly) -> Self {
        let mut out = Surd { s, t, d: None, den };
        if let Some(d) = d {
            if !out.t.is_zero() {
                let (k, rad) = normalize_radicand(&d);
                out.t = out.t.scale(&k);
                out.d = rad;
                if out.d.is_none() {
                    out.s = &out.s + &out.t;
                    out.t = SparsePoly::zero();
                }
            }
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.t.is_zero() && self.den.is_constant()
    }

    /// The polynomial value when there is no radical and the denominator is
    /// constant.
    pub fn to_poly(&self) -> Option<SparsePoly> {
        if !self.is_polynomial() {
            return None;
        }
        let c = self.den.constant_term();
        Some(self.s.scale(&crate::scalar::Field::inv(&c)?))
    }

    fn common_radicand(&self, o: &Surd) -> Result<Option<SparsePoly>, ExprError> {
        match (&self.d, &o.d) {
            (Some(a), Some(b)) if a != b => Err(ExprError::MixedRadicands),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn add(&self, o: &Surd) -> Result<Surd, ExprError> {
        let d = self.common_radicand(o)?;
        if self.den == o.den {
            return Ok(Surd::new(&self.s + &o.s, &self.t + &o.t, d, self.den.clone()));
        }
        Ok(Surd::new(
            &(&self.s * &o.den) + &(&o.s * &self.den),
            &(&self.t * &o.den) + &(&o.t * &self.den),
            d,
            &self.den * &o.den,
        ))
    }

    pub fn neg(&self) -> Surd {
        Surd { s: -&self.s, t: -&self.t, d: self.d.clone(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Surd) -> Result<Surd, ExprError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Surd) -> Result<Surd, ExprError> {
        let d = self.common_radicand(o)?;
        let tt = &self.t * &o.t;
        let s = match &d {
            Some(dp) if !tt.is_zero() => &(&self.s * &o.s) + &(&tt * dp),
            _ => &self.s * &o.s,
        };
        let t = &(&self.s * &o.t) + &(&self.t * &o.s);
        Ok(Surd::new(s, t, d, &self.den * &o.den))
    }

    pub fn div(&self, o: &Surd) -> Result<Surd, ExprError> {
        if o.s.is_zero() && o.t.is_zero() {
            return Err(ExprError::Poly(PolyError::DivisionByZero));
        }
        if o.t.is_zero() {
            return Ok(Surd::new(&self.s * &o.den, &self.t * &o.den, self.d.clone(), &self.den * &o.s));
        }
        // rationalize: 1/(s + t√d) = (s − t√d)/(s² − t²d)
        let d = o.d.clone().unwrap();
        let conj = Surd { s: &o.s * &o.den, t: -&(&o.t * &o.den), d: Some(d.clone()), den: one() };
        let norm = &(&o.s * &o.s) - &(&(&o.t * &o.t) * &d);
        let num = self.mul(&conj)?;
        Ok(Surd { den: &num.den * &norm, ..num })
    }

    pub fn pow(&self, k: u32) -> Result<Surd, ExprError> {
        let mut acc = Surd::constant(QuadExt::one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn sqrt(&self) -> Result<Surd, ExprError> {
        if !self.t.is_zero() {
            return Err(ExprError::Unsupported("nested radicals".into()));
        }
        if !self.den.is_constant() {
            return Err(ExprError::Unsupported("radicand with a polynomial denominator".into()));
        }
        let c = self.den.constant_term();
        let Some(c) = c.as_rational().cloned() else {
            return Err(ExprError::Unsupported("irrational denominator under a root".into()));
        };
        // sqrt(s/c) = sqrt(s·c)/|c|
        let rad = self.s.scale(&QuadExt::rational(c.clone()));
        Ok(Surd::new(SparsePoly::zero(), one(), Some(rad), SparsePoly::constant(QuadExt::rational(c.abs()))))
    }

    /// Exact equality of values, assuming the radicand is not a square.
    pub fn same_value(&self, o: &Surd) -> bool {
        let d_ok = match (&self.d, &o.d) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        };
        let s_eq = (&self.s * &o.den) == (&o.s * &self.den);
        let t_eq = (&self.t * &o.den) == (&o.t * &self.den);
        d_ok && s_eq && t_eq
    }

    pub fn eval_f64(&self, vars: &[&str], point: &[f64]) -> f64 {
        let ev = |p: &SparsePoly| -> f64 {
            let names: Vec<String> = p.vars().to_vec();
            let vals: Vec<f64> = names
                .iter()
                .map(|n| vars.iter().position(|v| v == n).map(|i| point[i]).unwrap_or(0.0))
                .collect();
            p.eval_f64(&vals)
        };
        let mut v = ev(&self.s);
        if let Some(d) = &self.d {
            v += ev(&self.t) * ev(d).max(0.0).sqrt();
        }
        v / ev(&self.den)
    }
}

/// Writes `d = k²·m·d'` with `d'` primitive (integer coefficients with
/// content one) and returns `(k·√m, d')` when `m ∈ {1, 3}`,
/// so that √3 lands in the coefficient field. Returns `d' = None` when `d`
/// is a perfect constant square.
fn normalize_radicand(d: &SparsePoly) -> (QuadExt, Option<SparsePoly>) {
    let (ra, rb) = d.split_sqrt3();
    if !rb.is_zero() {
        return (QuadExt::one(), Some(d.clone()));
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in ra.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return (QuadExt::zero(), None);
    }
    let content = Rational::new(num_gcd.clone(), den_lcm.clone());
    let prim = ra.scale(&content.recip());
    // sqrt(g/l) = sqrt(g·l)/l
    let gl = &num_gcd * &den_lcm;
    let (sq, rest) = square_part(&gl);
    let k = Rational::new(sq, den_lcm);
    let sqrt_rest = if rest.is_one() {
        Some(QuadExt::rational(k.clone()))
    } else if rest == BigInt::from(3) {
        Some(QuadExt::new(Rational::zero(), k.clone()))
    } else {
        None
    };
    let constant_radicand = prim.is_constant();
    match sqrt_rest {
        Some(q) if constant_radicand => (q, None),
        Some(q) => (q, Some(SparsePoly::from_rat(&prim))),
        None => {
            let rad = SparsePoly::from_rat(&prim.scale(&Rational::from_integer(rest)));
            (QuadExt::rational(k), Some(rad))
        }
    }
}

/// `n = s²·r` with `r` free of small square factors.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut r = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while p <= limit && &p * &p <= r {
        let pp = &p * &p;
        while (&r % &pp).is_zero() {
            r /= &pp;
            s *= &p;
        }
        p += 1;
    }
    (s, r)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    defs: &'a BTreeMap<String, Surd>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Surd, ExprError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Surd, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?)?;
                }
                b'/' => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Surd, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Surd, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected an integer exponent");
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
            return base.pow(k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Surd, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match rational::parse_rational(text) {
                    Some(r) => Ok(Surd::constant(QuadExt::rational(r))),
                    None => self.err("bad number"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                if name == "sqrt" {
                    if self.peek() != Some(b'(') {
                        return self.err("expected `(` after sqrt");
                    }
                    let arg = self.atom()?;
                    return arg.sqrt();
                }
                if let Some(v) = self.defs.get(&name) {
                    return Ok(v.clone());
                }
                Ok(Surd::poly(Poly::var(&name)))
            }
            _ => self.err("unexpected token"),
        }
    }
}

/// Parses `src`, expanding identifiers found in `defs`.
pub fn parse_with(src: &str, defs: &BTreeMap<String, Surd>) -> Result<Surd, ExprError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, defs };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn parse(src: &str) -> Result<Surd, ExprError> {
    parse_with(src, &BTreeMap::new())
}

/// Parses a formula that must denote a polynomial.
pub fn parse_poly(src: &str) -> Result<SparsePoly, ExprError> {
    parse(src)?.to_poly().ok_or_else(|| ExprError::Unsupported(format!("`{src}` is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn polynomial_arithmetic() {
        let p = parse_poly("(x+1)*(x-1) - x^2").unwrap();
        assert_eq!(p, SparsePoly::constant(QuadExt::rational(int(-1))));
        let q = parse_poly("3/2*x*y^2").unwrap();
        assert_eq!(q.eval_rational(&[int(2), int(1)]).unwrap(), QuadExt::rational(int(3)));
    }

    #[test]
    fn sqrt3_joins_the_coefficients() {
        let p = parse_poly("3*sqrt(3)/2*x").unwrap();
        assert_eq!(p.eval_rational(&[int(2)]).unwrap(), QuadExt::new(int(0), int(3)));
        let q = parse_poly("sqrt(12)").unwrap();
        assert_eq!(q.constant_term(), QuadExt::new(int(0), int(2)));
    }

    #[test]
    fn radicands_are_normalized() {
        let a = parse("3*sqrt(12-3*p^2)").unwrap();
        let b = parse("3*sqrt(3)*sqrt(4-p^2)").unwrap();
        assert!(a.same_value(&b));
        let c = parse("sqrt(4*(2-p))").unwrap();
        let d = parse("2*sqrt(2-p)").unwrap();
        assert!(c.same_value(&d));
    }

    #[test]
    fn rational_functions() {
        let e = parse("e/((2-e)*(e+7))").unwrap();
        assert!(!e.is_polynomial());
        let v = e.eval_f64(&["e"], &[1.0]);
        assert!((v - 0.125).abs() < 1e-15);
        let f = parse("1/(1+sqrt(x))").unwrap();
        assert!((f.eval_f64(&["x"], &[4.0]) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn definitions_expand() {
        let mut defs = BTreeMap::new();
        defs.insert("b".to_string(), parse("p*(p^2-3)").unwrap());
        let v = parse_with("b^2", &defs).unwrap().to_poly().unwrap();
        assert_eq!(v.eval_rational(&[rat(1, 1)]).unwrap(), QuadExt::rational(int(4)));
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(parse("x +"), Err(ExprError::Parse { .. })));
        assert!(matches!(parse("sqrt(x)+sqrt(y)"), Err(ExprError::MixedRadicands)));
    }
}
