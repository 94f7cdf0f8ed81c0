//! Dense univariate polynomials over ℚ: gcd, Sturm sequences and real-root
//! isolation.

use crate::poly::{Poly, RatPoly};
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QPoly(Vec<Rational>);

/// An isolating interval for one real root; `exact` is set when the root
/// was found to be a rational endpoint.
#[derive(Clone, PartialEq, Debug)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: Option<Rational>,
}

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&v| rational::int(v)).collect())
    }

    /// From a multivariate polynomial in (at most) one variable.
    pub fn from_poly(p: &RatPoly, var: &str) -> Option<Self> {
        let p = p.compact();
        if p.vars().len() > 1 || (p.vars().len() == 1 && p.vars()[0] != var) {
            return None;
        }
        let deg = p.total_degree() as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (m, v) in p.terms() {
            let e = m.first().copied().unwrap_or(0) as usize;
            c[e] = v.clone();
        }
        Some(QPoly::new(c))
    }

    pub fn to_poly(&self, var: &str) -> RatPoly {
        Poly::from_terms(&[var], self.0.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + rational::to_f64(c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(Rational::zero)
                        + o.0.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(QPoly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect(),
        )
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let lc = d.leading();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] / &lc;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &t * dc;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Substitutes `x ↦ -x`.
    pub fn reflect(&self) -> Self {
        QPoly::new(self.0.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn sturm_sequence(&self) -> Vec<QPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        seq
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        let seq = self.squarefree().sturm_sequence();
        let va = sign_changes(&seq, a);
        let vb = sign_changes(&seq, b);
        va.saturating_sub(vb)
    }

    /// Isolating intervals (width ≤ `width`) for every distinct real root in
    /// `[a, b]`, in increasing order.
    pub fn isolate_roots(&self, a: &Rational, b: &Rational, width: &Rational) -> Vec<RootInterval> {
        if self.is_zero() {
            return Vec::new();
        }
        let f = self.squarefree();
        let seq = f.sturm_sequence();
        let mut out = Vec::new();
        if f.eval(a).is_zero() {
            out.push(RootInterval { lo: a.clone(), hi: a.clone(), exact: Some(a.clone()) });
        }
        let mut stack = vec![(a.clone(), b.clone(), sign_changes(&seq, a), sign_changes(&seq, b))];
        let mut found = Vec::new();
        while let Some((lo, hi, vlo, vhi)) = stack.pop() {
            let n = vlo.saturating_sub(vhi);
            if n == 0 {
                continue;
            }
            if f.eval(&hi).is_zero() && n == 1 {
                found.push(RootInterval { lo: hi.clone(), hi: hi.clone(), exact: Some(hi) });
                continue;
            }
            if n == 1 && &hi - &lo <= *width {
                found.push(RootInterval { lo, hi, exact: None });
                continue;
            }
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            let vm = sign_changes(&seq, &mid);
            stack.push((mid.clone(), hi, vm, vhi));
            stack.push((lo, mid, vlo, vm));
        }
        found.sort_by(|x, y| x.lo.cmp(&y.lo));
        out.extend(found);
        out
    }

    /// Distinct real roots in `[a, b]` as f64 approximations.
    pub fn real_roots_f64(&self, a: &Rational, b: &Rational) -> Vec<f64> {
        let w = rational::pow2(-60);
        self.isolate_roots(a, b, &w)
            .into_iter()
            .map(|r| match r.exact {
                Some(x) => rational::to_f64(&x),
                None => rational::to_f64(&((&r.lo + &r.hi) / Rational::from_integer(2.into()))),
            })
            .collect()
    }

    /// `true` when the polynomial has no root in `[a, b]`; then its sign
    /// there is that of any sample.
    pub fn root_free_on(&self, a: &Rational, b: &Rational) -> bool {
        !self.is_zero() && self.eval(a) != Rational::zero() && self.count_roots(a, b) == 0
    }

    /// Exact sign on `[a, b]` when the polynomial does not vanish there.
    pub fn constant_sign_on(&self, a: &Rational, b: &Rational) -> Option<i32> {
        self.root_free_on(a, b).then(|| rational::sign(&self.eval(a)))
    }
}

fn sign_changes(seq: &[QPoly], x: &Rational) -> usize {
    let mut last = 0i32;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly("x"))
    }
}
