//! Sparse multivariate polynomials.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors, so term order
//! is lexicographic in the declared variable order and therefore canonical.

use crate::interval::Interval;
use crate::quad::QuadExt;
use crate::rational::Rational;
use crate::scalar::{Field, Scalar};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Total-degree cap applied by the operator impls.
pub const DEFAULT_MAX_DEGREE: u32 = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("total degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient vanishes identically")]
    DegenerateLeading,
}

pub type Monomial = Vec<u32>;

#[derive(Clone)]
pub struct Poly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomials with coefficients in ℚ(√3).
pub type SparsePoly = Poly<QuadExt>;
/// Polynomials with rational coefficients.
pub type RatPoly = Poly<Rational>;

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn zero_in(vars: &[&str]) -> Self {
        Poly { vars: names(vars), terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { vars: Vec::new(), terms }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], C::one());
        Poly { vars: vec![name.to_string()], terms }
    }

    /// Builds from explicit terms; zero coefficients are dropped and repeated
    /// monomials are summed.
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Poly { vars: names(vars), terms: BTreeMap::new() };
        for (m, c) in terms {
            assert_eq!(m.len(), p.vars.len(), "monomial length does not match variables");
            p.accumulate(m, &c);
        }
        p
    }

    fn from_parts(vars: Vec<String>, terms: BTreeMap<Monomial, C>) -> Self {
        Poly { vars, terms }
    }

    fn accumulate(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.plus(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> C {
        let z = vec![0; self.vars.len()];
        self.terms.get(&z).cloned().unwrap_or_else(C::zero)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.var_index(name).is_some()
    }

    /// Variables that actually occur with positive degree.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.iter().sum::<u32>() == degree)
    }

    pub fn coeff(&self, m: &[u32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that occurs.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self, PolyError> {
        if vars == self.vars.as_slice() {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m[i] > 0) {
                        return Err(PolyError::UnknownVariable(v.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut nm = vec![0; vars.len()];
            for (i, &e) in m.iter().enumerate() {
                if let Some(j) = map[i] {
                    nm[j] = e;
                }
            }
            terms.insert(nm, c.clone());
        }
        Ok(Poly { vars: vars.to_vec(), terms })
    }

    /// Drops variables that do not occur.
    pub fn compact(&self) -> Self {
        let used = self.used_vars();
        self.with_vars(&used).expect("used variables cover the support")
    }

    pub fn rename(&self, from: &str, to: &str) -> Self {
        let mut p = self.clone();
        if let Some(i) = p.var_index(from) {
            if p.has_var(to) {
                // merge: substitute `to` for `from`
                return self.substitute(from, &Poly::var(to)).expect("substitution by a variable");
            }
            p.vars[i] = to.to_string();
        }
        p
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut v = self.vars.clone();
        for w in &other.vars {
            if !v.contains(w) {
                v.push(w.clone());
            }
        }
        v
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let v = self.union_vars(other);
        (self.with_vars(&v).unwrap(), other.with_vars(&v).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = if self.vars == other.vars {
            (self.clone(), std::borrow::Cow::Borrowed(other))
        } else {
            let (a, b) = self.aligned(other);
            (a, std::borrow::Cow::Owned(b))
        };
        for (m, c) in b.terms.iter() {
            a.accumulate(m.clone(), c);
        }
        a
    }

    pub fn neg(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = c.times(k);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Self, cap: u32) -> Result<Self, PolyError> {
        let degree = self.total_degree() + other.total_degree();
        if degree > cap && !self.is_zero() && !other.is_zero() {
            return Err(PolyError::DegreeOverflow { degree, cap });
        }
        let (a, b) = self.aligned(other);
        let mut out = Poly { vars: a.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.accumulate(m, &ca.times(cb));
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, k: u32, cap: u32) -> Result<Self, PolyError> {
        let degree = self.total_degree().saturating_mul(k);
        if degree > cap {
            return Err(PolyError::DegreeOverflow { degree, cap });
        }
        let mut result = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        result.terms.insert(vec![0; self.vars.len()], C::one());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base, cap)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base, cap)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, k: u32) -> Self {
        self.try_pow(k, DEFAULT_MAX_DEGREE).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn derivative(&self, name: &str) -> Result<Self, PolyError> {
        let i = self.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm[i] -= 1;
            out.accumulate(nm, &c.times(&C::from_i64(m[i] as i64)));
        }
        Ok(out)
    }

    /// Positional evaluation in the order of [`Poly::vars`].
    pub fn eval_at(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch { expected: self.vars.len(), got: point.len() });
        }
        let maxdeg: Vec<u32> = (0..self.vars.len())
            .map(|i| self.terms.keys().map(|m| m[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<C>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d as usize + 1);
                v.push(C::one());
                for k in 1..=d as usize {
                    let next = v[k - 1].times(x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.times(&powers[i][e as usize]);
                }
            }
            acc = acc.plus(&t);
        }
        Ok(acc)
    }

    /// Evaluation at named values; every occurring variable must be bound.
    pub fn eval(&self, point: &[(&str, C)]) -> Result<C, PolyError> {
        let map: HashMap<&str, &C> = point.iter().map(|(k, v)| (*k, v)).collect();
        let mut vals = Vec::with_capacity(self.vars.len());
        let used = self.used_vars();
        for v in &self.vars {
            match map.get(v.as_str()) {
                Some(c) => vals.push((*c).clone()),
                None if !used.contains(v) => vals.push(C::zero()),
                None => return Err(PolyError::UnboundVariable(v.clone())),
            }
        }
        self.eval_at(&vals)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= point[i].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating evaluation at named values; every occurring variable must be
    /// bound.
    pub fn eval_f64_named(&self, point: &[(&str, f64)]) -> Result<f64, PolyError> {
        let used = self.used_vars();
        let mut vals = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match point.iter().find(|(k, _)| k == v) {
                Some((_, x)) => vals.push(*x),
                None if !used.contains(v) => vals.push(0.0),
                None => return Err(PolyError::UnboundVariable(v.clone())),
            }
        }
        Ok(self.eval_f64(&vals))
    }

    /// Substitutes `value` for `name` and removes the variable.
    pub fn specialize(&self, name: &str, value: &C) -> Self {
        let Some(i) = self.var_index(name) else {
            return self.clone();
        };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = Poly { vars, terms: BTreeMap::new() };
        let mut pows: Vec<C> = vec![C::one()];
        for (m, c) in &self.terms {
            let e = m[i] as usize;
            while pows.len() <= e {
                let next = pows.last().unwrap().times(value);
                pows.push(next);
            }
            let mut nm = m.clone();
            nm.remove(i);
            out.accumulate(nm, &c.times(&pows[e]));
        }
        out
    }

    /// Simultaneous substitution `f(images[0], …, images[n-1])`, positional in
    /// [`Poly::vars`].
    pub fn compose(&self, images: &[Self]) -> Result<Self, PolyError> {
        if images.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch { expected: self.vars.len(), got: images.len() });
        }
        let mut powers: Vec<Vec<Self>> = images.iter().map(|g| vec![Poly::constant(C::one()), g.clone()]).collect();
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &e) in m.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(&images[i], DEFAULT_MAX_DEGREE)?;
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.try_mul(&powers[i][e], DEFAULT_MAX_DEGREE)?;
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Composition `f(…, name := g, …)`.
    pub fn substitute(&self, name: &str, g: &Self) -> Result<Self, PolyError> {
        let Some(i) = self.var_index(name) else {
            return Ok(self.clone());
        };
        let deg = self.degree_in(name);
        // group terms by the exponent of `name`
        let mut groups: BTreeMap<u32, Poly<C>> = BTreeMap::new();
        let mut rest_vars = self.vars.clone();
        rest_vars.remove(i);
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            let e = nm.remove(i);
            groups
                .entry(e)
                .or_insert_with(|| Poly { vars: rest_vars.clone(), terms: BTreeMap::new() })
                .accumulate(nm, c);
        }
        // Horner in g
        let mut acc = Poly { vars: rest_vars.clone(), terms: BTreeMap::new() };
        for e in (0..=deg).rev() {
            acc = acc.try_mul(g, u32::MAX)?;
            if let Some(c) = groups.get(&e) {
                acc = acc.add(c);
            }
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), &f(c));
        }
        out
    }

    /// Replaces `name^k` by `replacement` until the degree in `name` is
    /// below `k`. This is the normal form modulo `name^k − replacement` when
    /// `replacement` has lower degree in `name`.
    pub fn reduce_power(&self, name: &str, k: u32, replacement: &Self) -> Result<Self, PolyError> {
        let Some(i) = self.var_index(name) else {
            return Ok(self.clone());
        };
        assert!(k > 0 && replacement.degree_in(name) < k);
        let vars = self.union_vars(replacement);
        let mut out = Poly { vars: vars.clone(), terms: BTreeMap::new() };
        let mut rep_pows: Vec<Self> = vec![Poly::constant(C::one())];
        for (m, c) in &self.terms {
            let e = m[i];
            let (qt, r) = (e / k, e % k);
            while rep_pows.len() <= qt as usize {
                let next = rep_pows.last().unwrap().try_mul(replacement, u32::MAX)?;
                rep_pows.push(next);
            }
            let mut nm = m.clone();
            nm[i] = r;
            let mono = Poly::from_parts(self.vars.clone(), BTreeMap::from([(nm, c.clone())]));
            out = out.add(&mono.try_mul(&rep_pows[qt as usize], u32::MAX)?);
        }
        out.with_vars(&vars)
    }

    /// Componentwise minimum of exponents over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.vars.len()];
        };
        let mut g = first.clone();
        for m in it {
            for (a, b) in g.iter_mut().zip(m) {
                *a = (*a).min(*b);
            }
        }
        g
    }

    pub fn div_monomial(&self, mono: &[u32]) -> Result<Self, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            for (a, b) in nm.iter_mut().zip(mono) {
                if *a < *b {
                    return Err(PolyError::InexactDivision);
                }
                *a -= b;
            }
            terms.insert(nm, c.clone());
        }
        Ok(Poly { vars: self.vars.clone(), terms })
    }

    fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Canonical text: variable list followed by terms in order.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("vars[{}];", self.vars.join(","));
        for (m, c) in &self.terms {
            let e: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{}:{};", e.join(","), c.render()));
        }
        s
    }

    /// Semantic equality regardless of variable order.
    pub fn equals(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl<C: Field> Poly<C> {
    /// Exact division; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (mut r, d) = self.aligned(d);
        let (ld_m, ld_c) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.inv().unwrap())
        };
        let mut q = Poly { vars: r.vars.clone(), terms: BTreeMap::new() };
        while let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.iter().zip(&ld_m).any(|(a, b)| a < b) {
                return Err(PolyError::InexactDivision);
            }
            let qm: Monomial = lm.iter().zip(&ld_m).map(|(a, b)| a - b).collect();
            let qc = lc.times(&ld_c);
            let t = Poly::from_parts(r.vars.clone(), BTreeMap::from([(qm.clone(), qc.clone())]));
            q.accumulate(qm, &qc);
            r = r.sub(&t.try_mul(&d, u32::MAX)?);
        }
        Ok(q)
    }

    /// Scales so that the leading coefficient (lexicographic order) is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }
}

impl Poly<Rational> {
    /// Tight interval image of each monomial, summed with coefficients.
    pub fn eval_interval(&self, boxes: &[Interval]) -> Result<Interval, PolyError> {
        if boxes.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch { expected: self.vars.len(), got: boxes.len() });
        }
        let mut acc = Interval::zero();
        for (m, c) in &self.terms {
            let mut t = Interval::point(c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&boxes[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Taylor expansion at `center`: the returned polynomial `g` satisfies
    /// `g(h) = f(center + h)`.
    pub fn shift(&self, center: &[Rational]) -> Self {
        let mut p = self.clone();
        for (i, c) in center.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let v = p.vars[i].clone();
            let lin = Poly::var(&v).add(&Poly::constant(c.clone()));
            p = p.substitute(&v, &lin).expect("shift substitution");
            p = p.with_vars(&self.vars).expect("same variables");
        }
        p
    }

    /// Content-free integer scaling is not needed; this returns the least
    /// common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms.values().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }
}

impl Poly<QuadExt> {
    pub fn from_rat(p: &RatPoly) -> Self {
        p.map_coeffs(|c| QuadExt::rational(c.clone()))
    }

    /// `(f, g)` with `self = f + √3·g`.
    pub fn split_sqrt3(&self) -> (RatPoly, RatPoly) {
        (self.map_coeffs(|c| c.a.clone()), self.map_coeffs(|c| c.b.clone()))
    }

    pub fn to_rat(&self) -> Option<RatPoly> {
        self.terms.values().all(|c| c.is_rational()).then(|| self.map_coeffs(|c| c.a.clone()))
    }

    /// Interval evaluation with √3 coefficients enclosed by rationals.
    pub fn eval_interval(&self, boxes: &[Interval]) -> Result<Interval, PolyError> {
        let (f, g) = self.split_sqrt3();
        let fi = f.eval_interval(boxes)?;
        if g.is_zero() {
            return Ok(fi);
        }
        let gi = g.eval_interval(boxes)?;
        let (lo, hi) = crate::quad::sqrt3_enclosure();
        Ok(fi.add(&gi.mul(&Interval::new(lo.clone(), hi.clone()))))
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<QuadExt, PolyError> {
        let pt: Vec<QuadExt> = point.iter().map(|r| QuadExt::rational(r.clone())).collect();
        self.eval_at(&pt)
    }
}

impl<C: Scalar> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<C: Scalar> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push(self.vars[i].clone()),
                    _ => mono.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            let cs = c.render();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !cs.starts_with("(") => (true, rest.to_string()),
                _ => (false, cs),
            };
            if !first {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            first = false;
            if mono.is_empty() {
                f.write_str(&body)?;
            } else if body == "1" {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", body, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a, C: Scalar> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        Poly::add(self, o)
    }
}

impl<'a, C: Scalar> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        Poly::sub(self, o)
    }
}

impl<'a, C: Scalar> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    /// Panics when the product exceeds [`DEFAULT_MAX_DEGREE`]; use
    /// [`Poly::try_mul`] to handle that case.
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        self.try_mul(o, DEFAULT_MAX_DEGREE).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn x() -> RatPoly {
        Poly::var("x")
    }

    fn c(v: i64) -> RatPoly {
        Poly::from_i64(v)
    }

    #[test]
    fn additive_inverse() {
        assert!((&x() + &(-&x())).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() + &c(1)) * &(&x() - &c(1));
        assert_eq!(p, &x().pow(2) - &c(1));
    }

    #[test]
    fn b_squared_expansion() {
        let p = Poly::<Rational>::var("p");
        let b = &p * &(&p.pow(2) - &c(3));
        let expected = &(&p.pow(6) - &p.pow(4).scale(&int(6))) + &p.pow(2).scale(&int(9));
        assert_eq!(b.pow(2), expected);
        // term-by-term against repeated multiplication
        assert_eq!(&b * &b, expected);
    }

    #[test]
    fn derivative_of_cube() {
        assert_eq!(x().pow(3).derivative("x").unwrap(), x().pow(2).scale(&int(3)));
        assert!(matches!(x().derivative("y"), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn eval_exact_and_interval() {
        let f = &x().pow(2) - &x();
        assert_eq!(f.eval(&[("x", rat(1, 2))]).unwrap(), rat(-1, 4));
        let e = x().pow(2).eval_interval(&[Interval::new(int(-1), int(1))]).unwrap();
        assert!(e.lo <= int(0) && e.hi >= int(1));
        assert!(matches!(f.eval(&[]), Err(PolyError::UnboundVariable(_))));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let err = x().pow(40).try_mul(&x().pow(40), 64).unwrap_err();
        assert_eq!(err, PolyError::DegreeOverflow { degree: 80, cap: 64 });
    }

    #[test]
    fn mixed_variables_auto_union() {
        let y = Poly::<Rational>::var("y");
        let s = &x() + &y;
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(s.eval(&[("x", int(2)), ("y", int(5))]).unwrap(), int(7));
    }

    #[test]
    fn exact_division() {
        let y = Poly::<Rational>::var("y");
        let a = &(&x() + &y) * &(&x() - &y.scale(&int(2)));
        assert_eq!(a.div_exact(&(&x() + &y)).unwrap(), &x() - &y.scale(&int(2)));
        assert_eq!(a.div_exact(&(&x() + &c(1))), Err(PolyError::InexactDivision));
    }

    #[test]
    fn substitute_and_reduce() {
        let s = Poly::<Rational>::var("s");
        let cc = Poly::<Rational>::var("c");
        // s^3 mod s^2 = 1 - c^2  →  s(1 - c^2)
        let one_minus_c2 = &c(1) - &cc.pow(2);
        let r = s.pow(3).reduce_power("s", 2, &one_minus_c2).unwrap();
        assert_eq!(r, &s * &one_minus_c2);
        let f = x().pow(2).substitute("x", &(&s + &c(1))).unwrap();
        assert_eq!(f, &(&s.pow(2) + &s.scale(&int(2))) + &c(1));
    }

    #[test]
    fn shift_is_taylor_expansion() {
        let f = &x().pow(3) - &x().scale(&int(2));
        let g = f.shift(&[rat(1, 3)]);
        let h = rat(2, 7);
        assert_eq!(
            g.eval(&[("x", h.clone())]).unwrap(),
            f.eval(&[("x", rat(1, 3) + h)]).unwrap()
        );
    }

    #[test]
    fn compose_substitutes_simultaneously() {
        let x = RatPoly::var("x");
        let y = RatPoly::var("y");
        let f = &(&x * &x) - &y;
        // swap the two variables
        let g = f.compose(&[y.clone(), x.clone()]).unwrap();
        assert_eq!(g, &(&y * &y) - &x);
    }

    #[test]
    fn display_is_readable() {
        let f = &(&x().pow(2).scale(&rat(3, 2)) - &x()) + &c(1);
        assert_eq!(f.to_string(), "3/2*x^2 - x + 1");
    }
}
