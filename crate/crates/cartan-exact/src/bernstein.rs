//! Tensor-product Bernstein enclosures on boxes.
//!
//! A [`Patch`] stores the Bernstein coefficients of a polynomial on a box as
//! integers over one common positive denominator. Halving a box by de
//! Casteljau only ever adds integers, so subdivision never needs a gcd.

use crate::interval::Interval;
use crate::poly::{Poly, PolyError, RatPoly, SparsePoly};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Patch {
    degs: Vec<usize>,
    strides: Vec<usize>,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn strides_for(degs: &[usize]) -> Vec<usize> {
    let mut s = vec![1; degs.len()];
    for i in (0..degs.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * (degs[i + 1] + 1);
    }
    s
}

impl Patch {
    /// Bernstein form of `f` on `bx` (one interval per variable of `f`).
    pub fn from_poly(f: &RatPoly, bx: &[Interval]) -> Result<Self, PolyError> {
        let n = f.vars().len();
        if bx.len() != n {
            return Err(PolyError::DimensionMismatch { expected: n, got: bx.len() });
        }
        // affine change of variables onto the unit box
        let mut g = f.clone();
        for (i, iv) in bx.iter().enumerate() {
            let v = f.vars()[i].clone();
            let lin = &Poly::var(&v).scale(&iv.width()) + &Poly::constant(iv.lo.clone());
            g = g.substitute(&v, &lin)?.with_vars(f.vars())?;
        }
        let degs: Vec<usize> = f.vars().iter().map(|v| f.degree_in(v) as usize).collect();
        let strides = strides_for(&degs);
        let size: usize = degs.iter().map(|d| d + 1).product();
        let mut a = vec![Rational::zero(); size];
        for (m, c) in g.terms() {
            let idx: usize = m.iter().zip(&strides).map(|(&e, s)| e as usize * s).sum();
            a[idx] = c.clone();
        }
        // power basis → Bernstein basis, one dimension at a time
        for dim in 0..n {
            let d = degs[dim];
            if d == 0 {
                continue;
            }
            let st = strides[dim];
            let ratios: Vec<Vec<Rational>> = (0..=d)
                .map(|k| (0..=k).map(|j| Rational::new(binom(k, j), binom(d, j))).collect())
                .collect();
            for base in 0..size {
                if (base / st) % (d + 1) != 0 {
                    continue;
                }
                let fiber: Vec<Rational> = (0..=d).map(|j| a[base + j * st].clone()).collect();
                for k in 0..=d {
                    let mut s = Rational::zero();
                    for j in 0..=k {
                        if !fiber[j].is_zero() {
                            s += &ratios[k][j] * &fiber[j];
                        }
                    }
                    a[base + k * st] = s;
                }
            }
        }
        let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut p = Patch { degs, strides, coeffs, den };
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        let tz = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.trailing_zeros().unwrap_or(0))
            .chain(std::iter::once(self.den.trailing_zeros().unwrap_or(0)))
            .min()
            .unwrap_or(0);
        if tz > 0 {
            for c in &mut self.coeffs {
                *c >>= tz as usize;
            }
            self.den >>= tz as usize;
        }
    }

    pub fn dims(&self) -> usize {
        self.degs.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degs
    }

    /// Common positive denominator of the coefficients.
    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> impl Iterator<Item = Rational> + '_ {
        self.coeffs.iter().map(|c| Rational::new(c.clone(), self.den.clone()))
    }

    fn min_index(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c < self.coeffs[best] {
                best = i;
            }
        }
        best
    }

    pub fn lower(&self) -> Rational {
        Rational::new(self.coeffs[self.min_index()].clone(), self.den.clone())
    }

    pub fn upper(&self) -> Rational {
        let m = self.coeffs.iter().max().unwrap();
        Rational::new(m.clone(), self.den.clone())
    }

    /// All coefficients strictly positive, hence the polynomial is > 0.
    pub fn all_positive(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_positive())
    }

    /// All coefficients ≤ 0, hence the polynomial is ≤ 0.
    pub fn all_nonpositive(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_positive())
    }

    pub fn all_negative(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_negative())
    }

    /// Multi-index (per dimension, 0 or degree) of the smallest corner
    /// coefficient, together with its exact value. Corner coefficients equal
    /// the polynomial's values at the box corners.
    pub fn min_corner(&self) -> (Vec<bool>, Rational) {
        let n = self.degs.len();
        let mut best: Option<(Vec<bool>, &BigInt)> = None;
        for mask in 0..(1usize << n) {
            let hi: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let idx: usize = hi.iter().enumerate().map(|(i, &h)| if h { self.degs[i] * self.strides[i] } else { 0 }).sum();
            let v = &self.coeffs[idx];
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((hi, v));
            }
        }
        let (hi, v) = best.unwrap();
        (hi, Rational::new(v.clone(), self.den.clone()))
    }

    /// Largest jump between neighbouring coefficients along `dim`.
    pub fn variation(&self, dim: usize) -> BigInt {
        let d = self.degs[dim];
        let st = self.strides[dim];
        let mut best = BigInt::zero();
        if d == 0 {
            return best;
        }
        for i in 0..self.coeffs.len() {
            if (i / st) % (d + 1) < d {
                let diff = (&self.coeffs[i + st] - &self.coeffs[i]).abs();
                if diff > best {
                    best = diff;
                }
            }
        }
        best
    }

    /// Halves along `dim`; returns the lower and upper child.
    pub fn split(&self, dim: usize) -> (Patch, Patch) {
        let d = self.degs[dim];
        let st = self.strides[dim];
        let size = self.coeffs.len();
        let mut left = vec![BigInt::zero(); size];
        let mut right = vec![BigInt::zero(); size];
        for base in 0..size {
            if (base / st) % (d + 1) != 0 {
                continue;
            }
            // level r holds 2^r · b^(r)
            let mut cur: Vec<BigInt> = (0..=d).map(|j| self.coeffs[base + j * st].clone()).collect();
            left[base] = &cur[0] << d;
            right[base + d * st] = &cur[d] << d;
            for r in 1..=d {
                for i in 0..=d - r {
                    let s = &cur[i] + &cur[i + 1];
                    cur[i] = s;
                }
                left[base + r * st] = &cur[0] << (d - r);
                right[base + (d - r) * st] = &cur[d - r] << (d - r);
            }
        }
        let den = &self.den << d;
        let mut l = Patch { degs: self.degs.clone(), strides: self.strides.clone(), coeffs: left, den: den.clone() };
        let mut r = Patch { degs: self.degs.clone(), strides: self.strides.clone(), coeffs: right, den };
        l.normalize();
        r.normalize();
        (l, r)
    }
}

/// Range enclosure of `f` on `bx`; √3 coefficients are enclosed by rational
/// intervals first.
pub fn bernstein_bounds(f: &SparsePoly, bx: &[Interval]) -> Result<(Rational, Rational), PolyError> {
    let (fa, fb) = f.split_sqrt3();
    let pa = Patch::from_poly(&fa, bx)?;
    let ia = Interval::new(pa.lower(), pa.upper());
    if fb.is_zero() {
        return Ok((ia.lo, ia.hi));
    }
    let pb = Patch::from_poly(&fb, bx)?;
    let ib = Interval::new(pb.lower(), pb.upper());
    let (lo, hi) = crate::quad::sqrt3_enclosure();
    let s = Interval::new(lo.clone(), hi.clone());
    let r = ia.add(&ib.mul(&s));
    Ok((r.lo, r.hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadExt;
    use crate::rational::{int, rat};

    fn unit() -> Vec<Interval> {
        vec![Interval::new(int(0), int(1))]
    }

    #[test]
    fn constant_and_linear() {
        let seven = SparsePoly::constant(QuadExt::rational(int(7))).with_vars(&["x".into()]).unwrap();
        assert_eq!(bernstein_bounds(&seven, &unit()).unwrap(), (int(7), int(7)));
        let x = SparsePoly::var("x");
        assert_eq!(bernstein_bounds(&x, &unit()).unwrap(), (int(0), int(1)));
    }

    #[test]
    fn quadratic_converges_under_bisection() {
        let x = RatPoly::var("x");
        let f = &x.pow(2) - &x;
        let p = Patch::from_poly(&f, &unit()).unwrap();
        assert!(p.lower() <= rat(-1, 4) && rat(-1, 4) <= p.upper());
        let (l, r) = p.split(0);
        let lo = l.lower().min(r.lower());
        assert!(lo >= rat(-1, 2) && lo <= rat(-1, 4));
    }

    #[test]
    fn split_matches_direct_construction() {
        let x = RatPoly::var("x");
        let y = RatPoly::var("y");
        let f = &(&(&x.pow(3) * &y) - &y.pow(2).scale(&int(2))) + &x;
        let bx = vec![Interval::new(int(-1), int(1)), Interval::new(rat(1, 2), int(2))];
        let p = Patch::from_poly(&f, &bx).unwrap();
        let (l, r) = p.split(1);
        let (bl, br) = bx[1].bisect();
        let pl = Patch::from_poly(&f, &[bx[0].clone(), bl]).unwrap();
        let pr = Patch::from_poly(&f, &[bx[0].clone(), br]).unwrap();
        assert_eq!(l.coeffs().collect::<Vec<_>>(), pl.coeffs().collect::<Vec<_>>());
        assert_eq!(r.coeffs().collect::<Vec<_>>(), pr.coeffs().collect::<Vec<_>>());
    }

    #[test]
    fn corners_are_exact_values() {
        let x = RatPoly::var("x");
        let f = &x.pow(2) - &x.scale(&int(3));
        let p = Patch::from_poly(&f, &[Interval::new(int(2), int(4))]).unwrap();
        assert_eq!(p.min_corner(), (vec![false], int(-2)));
    }

    #[test]
    fn dimension_mismatch() {
        let x = SparsePoly::var("x");
        assert!(matches!(bernstein_bounds(&x, &[]), Err(PolyError::DimensionMismatch { .. })));
    }
}
