//! Dense integer polynomials and exact affine substitutions.
//!
//! A [`DenseInt`] holds `Σ cₘ xᵐ / den` with integer `cₘ`. The substitution
//! `xᵢ = (α + β·u)/γ` with integers `α, β, γ` is carried out by scaling and
//! an integer Taylor shift, so no rational arithmetic is needed.

use cartan_exact::{RatPoly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseInt {
    degs: Vec<usize>,
    strides: Vec<usize>,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

fn strides_for(degs: &[usize]) -> Vec<usize> {
    let mut s = vec![1; degs.len()];
    for i in (0..degs.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * (degs[i + 1] + 1);
    }
    s
}

impl DenseInt {
    pub fn from_poly(f: &RatPoly) -> Self {
        let degs: Vec<usize> = f.vars().iter().map(|v| f.degree_in(v) as usize).collect();
        let strides = strides_for(&degs);
        let size: usize = degs.iter().map(|d| d + 1).product();
        let den = f.denominator_lcm();
        let mut coeffs = vec![BigInt::zero(); size];
        for (m, c) in f.terms() {
            let idx: usize = m.iter().zip(&strides).map(|(&e, s)| e as usize * s).sum();
            coeffs[idx] = c.numer() * (&den / c.denom());
        }
        DenseInt { degs, strides, coeffs, den }
    }

    pub fn dims(&self) -> usize {
        self.degs.len()
    }

    /// Substitutes `x_dim = (α + β·u)/γ`, `γ > 0`.
    pub fn substitute(&self, dim: usize, alpha: &BigInt, beta: &BigInt, gamma: &BigInt) -> DenseInt {
        let d = self.degs[dim];
        let st = self.strides[dim];
        let mut out = self.clone();
        if d == 0 {
            return out;
        }
        let gpow: Vec<BigInt> = (0..=d).scan(BigInt::one(), |acc, _| {
            let v = acc.clone();
            *acc *= gamma;
            Some(v)
        }).collect();
        let bpow: Vec<BigInt> = (0..=d).scan(BigInt::one(), |acc, _| {
            let v = acc.clone();
            *acc *= beta;
            Some(v)
        }).collect();
        for base in 0..self.coeffs.len() {
            if (base / st) % (d + 1) != 0 {
                continue;
            }
            // c'ₖ = cₖ·γ^(d−k), then Taylor shift by α, then scale by βʲ
            let mut c: Vec<BigInt> = (0..=d).map(|k| &self.coeffs[base + k * st] * &gpow[d - k]).collect();
            if !alpha.is_zero() {
                for i in 0..d {
                    for j in (i..d).rev() {
                        let t = alpha * &c[j + 1];
                        c[j] += t;
                    }
                }
            }
            for (j, v) in c.into_iter().enumerate() {
                out.coeffs[base + j * st] = v * &bpow[j];
            }
        }
        out.den = &self.den * &gpow[d];
        out
    }

    /// The polynomial on the unit box: `xᵢ = loᵢ + wᵢ·uᵢ`.
    pub fn to_unit_box(&self, lo: &[Rational], w: &[Rational]) -> DenseInt {
        let mut g = self.clone();
        for i in 0..self.dims() {
            let q = lo[i].denom().lcm(w[i].denom());
            let a = lo[i].numer() * (&q / lo[i].denom());
            let b = w[i].numer() * (&q / w[i].denom());
            g = g.substitute(i, &a, &b, &q);
        }
        g
    }

    /// Enclosure for `uᵢ ∈ [0, 1]`, or `uᵢ ∈ [−1, 1]` where `symmetric[i]`.
    pub fn enclose_unit(&self, symmetric: &[bool]) -> (Rational, Rational) {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        let n = self.dims();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut constant = true;
            let mut both = false;
            for i in 0..n {
                let e = (idx / self.strides[i]) % (self.degs[i] + 1);
                if e > 0 {
                    constant = false;
                    if symmetric[i] && e % 2 == 1 {
                        both = true;
                    }
                }
            }
            if constant {
                lo += c;
                hi += c;
            } else if both {
                lo -= c.abs();
                hi += c.abs();
            } else if c.is_negative() {
                lo += c;
            } else {
                hi += c;
            }
        }
        (Rational::new(lo, self.den.clone()), Rational::new(hi, self.den.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::expr::parse_poly;
    use cartan_exact::rational::{int, rat};

    #[test]
    fn substitution_matches_evaluation() {
        let f = parse_poly("3/2*x^3*y - 5*x*y^2 + 7/3*y - 1").unwrap().to_rat().unwrap();
        let d = DenseInt::from_poly(&f);
        let g = d.to_unit_box(&[rat(-1, 3), rat(1, 20)], &[rat(1, 4), rat(3, 7)]);
        // g(u) = f(lo + w·u): compare at a few rational u by rebuilding g
        let vars = f.vars().to_vec();
        let mut terms = Vec::new();
        for (idx, c) in g.coeffs.iter().enumerate() {
            let m: Vec<u32> = (0..2).map(|i| ((idx / g.strides[i]) % (g.degs[i] + 1)) as u32).collect();
            terms.push((m, Rational::new(c.clone(), g.den.clone())));
        }
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let gp = RatPoly::from_terms(&names, terms);
        for (u, v) in [(int(0), int(0)), (int(1), rat(1, 2)), (rat(2, 5), int(1))] {
            let x = rat(-1, 3) + rat(1, 4) * &u;
            let y = rat(1, 20) + rat(3, 7) * &v;
            assert_eq!(gp.eval_at(&[u, v]).unwrap(), f.eval_at(&[x, y]).unwrap());
        }
    }
}
