//! Univariate polynomials whose coefficients are multivariate polynomials,
//! and their Sylvester resultants.

use crate::poly::{Poly, PolyError};
use crate::scalar::{Field, Scalar};

/// `Σ coeffs[k]·var^k`; the leading coefficient is never the zero polynomial
/// (except for the zero polynomial itself, which has no coefficients).
#[derive(Clone, Debug)]
pub struct UniPoly<C: Scalar> {
    var: String,
    coeffs: Vec<Poly<C>>,
}

impl<C: Scalar> PartialEq for UniPoly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.var == o.var && self.coeffs == o.coeffs
    }
}

impl<C: Scalar> UniPoly<C> {
    pub fn new(var: &str, mut coeffs: Vec<Poly<C>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var: var.to_string(), coeffs }
    }

    /// Collects `f` as a polynomial in `var`.
    pub fn from_poly(f: &Poly<C>, var: &str) -> Self {
        let deg = f.degree_in(var) as usize;
        let mut coeffs = vec![Poly::zero(); deg + 1];
        let Some(i) = f.var_index(var) else {
            return UniPoly::new(var, vec![f.clone()]);
        };
        let mut rest: Vec<String> = f.vars().to_vec();
        rest.remove(i);
        let rest_ref: Vec<&str> = rest.iter().map(|s| s.as_str()).collect();
        let mut buckets: Vec<Vec<(Vec<u32>, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in f.terms() {
            let mut nm = m.clone();
            let e = nm.remove(i) as usize;
            buckets[e].push((nm, c.clone()));
        }
        for (k, b) in buckets.into_iter().enumerate() {
            coeffs[k] = Poly::from_terms(&rest_ref, b);
        }
        UniPoly::new(var, coeffs)
    }

    pub fn to_poly(&self) -> Poly<C> {
        let x = Poly::<C>::var(&self.var);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Poly<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Poly<C> {
        self.coeffs.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Poly<C>> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn map(&self, f: impl Fn(&Poly<C>) -> Poly<C>) -> Self {
        UniPoly::new(&self.var, self.coeffs.iter().map(f).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(&self.var, vec![]);
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.var, out)
    }
}

impl<C: Field> UniPoly<C> {
    /// Division by a polynomial whose leading coefficient is a nonzero
    /// constant; returns `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dl = d.leading().ok_or(PolyError::DivisionByZero)?;
        if !dl.is_constant() {
            return Err(PolyError::DegenerateLeading);
        }
        let inv = dl.constant_term().inv().ok_or(PolyError::DivisionByZero)?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::new(&self.var, vec![]), self.clone()));
        }
        let mut q = vec![Poly::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].scale(&inv);
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&t * dc);
            }
            q[k] = t;
        }
        r.truncate(dd);
        Ok((UniPoly::new(&self.var, q), UniPoly::new(&self.var, r)))
    }

    /// Determinant of the Sylvester matrix, by fraction-free Bareiss
    /// elimination.
    ///
    /// Convention: rows of `f` first, coefficients from the top degree down,
    /// so `Res(S − u, S − v) = u − v` and in general
    /// `Res(f, g) = lc(f)^deg g · Π g(αᵢ)` over the roots `αᵢ` of `f`.
    pub fn resultant(&self, g: &Self) -> Result<Poly<C>, PolyError> {
        if self.var != g.var {
            return Err(PolyError::UnknownVariable(g.var.clone()));
        }
        let (m, n) = match (self.degree(), g.degree()) {
            (Some(m), Some(n)) if m >= 1 && n >= 1 => (m, n),
            _ => return Err(PolyError::DegenerateLeading),
        };
        let size = m + n;
        let mut a: Vec<Vec<Poly<C>>> = vec![vec![Poly::zero(); size]; size];
        for r in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                a[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in g.coeffs.iter().rev().enumerate() {
                a[n + r][r + k] = c.clone();
            }
        }
        bareiss_det(a)
    }
}

/// Fraction-free determinant; every intermediate division is exact.
pub fn bareiss_det<C: Field>(mut a: Vec<Vec<Poly<C>>>) -> Result<Poly<C>, PolyError> {
    let n = a.len();
    if n == 0 {
        return Ok(Poly::constant(C::one()));
    }
    let mut sign_flip = false;
    let mut prev = Poly::constant(C::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            a.swap(k, piv);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign_flip { -&det } else { det })
}
