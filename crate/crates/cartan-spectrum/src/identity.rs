//! Fits `E₅ = c₅E₁⁵ + c₃E₁³E₂ + c₁E₁E₄` on the normal-form spectrum, where
//! `Eₖ` are the elementary symmetric functions of the eigenvalues written as
//! polynomials in `b`.

use crate::charpoly::{NormalFormAlgebra, B, EPS};
use crate::SpectrumError;
use cartan_exact::linsolve;
use cartan_exact::{QPoly, RatFunc, RatPoly, Rational, UniPoly};
use num_traits::Zero;

/// Coefficients of `b⁰ … b⁵` of `E₅ − c₅E₁⁵ − c₃E₁³E₂ − c₁E₁E₄`.
pub type Residual<T> = Vec<T>;

#[derive(Clone, Debug)]
pub struct IdentityCoeffs {
    pub c5: RatFunc,
    pub c3: RatFunc,
    pub c1: RatFunc,
    pub residual: Residual<RatFunc>,
}

#[derive(Clone, Debug)]
pub struct IdentityCoeffsAt {
    pub eps: Rational,
    pub c5: Rational,
    pub c3: Rational,
    pub c1: Rational,
    pub residual: Residual<Rational>,
}

impl IdentityCoeffs {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.iter().all(|r| r.is_zero())
    }

    pub fn at(&self, eps: &Rational) -> Option<[Rational; 3]> {
        Some([self.c5.eval(eps)?, self.c3.eval(eps)?, self.c1.eval(eps)?])
    }

    /// Least common denominator of the three coefficients.
    pub fn common_denominator(&self) -> QPoly {
        let lcm = |a: &QPoly, b: &QPoly| a.mul(b).div_rem(&a.gcd(b)).0.monic();
        lcm(&lcm(self.c5.den(), self.c3.den()), self.c1.den())
    }
}

impl IdentityCoeffsAt {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.iter().all(|r| r.is_zero())
    }
}

/// The three right-hand monomials `E₁⁵, E₁³E₂, E₁E₄` and `E₅`, in `(b, ε)`.
fn monomials(alg: &NormalFormAlgebra) -> ([RatPoly; 3], RatPoly) {
    let e1 = alg.elementary_b(1);
    let e2 = alg.elementary_b(2);
    let e4 = alg.elementary_b(4);
    let e5 = alg.elementary_b(5);
    let e1_3 = &(&e1 * &e1) * &e1;
    let m5 = &(&e1_3 * &e1) * &e1;
    let m3 = &e1_3 * &e2;
    let m1 = &e1 * &e4;
    ([m5, m3, m1], e5)
}

fn b_coeffs(f: &RatPoly) -> Vec<RatPoly> {
    let u = UniPoly::from_poly(f, B);
    (0..=5).map(|k| u.coeff(k).compact()).collect()
}

fn eps_func(f: &RatPoly) -> Result<RatFunc, SpectrumError> {
    let q = QPoly::from_poly(f, EPS).ok_or_else(|| SpectrumError::Structure("coefficient is not a polynomial in ε".into()))?;
    Ok(RatFunc::from_poly(EPS, q))
}

fn det3<T: Clone>(m: &[[T; 3]; 3], mul: impl Fn(&T, &T) -> T, add: impl Fn(&T, &T) -> T, sub: impl Fn(&T, &T) -> T) -> T {
    let minor = |a: &T, b: &T, c: &T, d: &T| sub(&mul(a, d), &mul(b, c));
    let t0 = mul(&m[0][0], &minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]));
    let t1 = mul(&m[0][1], &minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]));
    let t2 = mul(&m[0][2], &minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]));
    add(&sub(&t0, &t1), &t2)
}

/// Rows: powers `b⁵, b³, b`; columns: the monomials.
const POWERS: [usize; 3] = [5, 3, 1];

/// Symbolic fit over ℚ(ε) by Cramer's rule.
pub fn fit_symbolic(alg: &NormalFormAlgebra) -> Result<IdentityCoeffs, SpectrumError> {
    let (mons, e5) = monomials(alg);
    let mc: Vec<Vec<RatPoly>> = mons.iter().map(b_coeffs).collect();
    let ec = b_coeffs(&e5);
    let mut m: [[RatFunc; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| RatFunc::constant(EPS, Rational::zero())));
    let mut rhs: [RatFunc; 3] = std::array::from_fn(|_| RatFunc::constant(EPS, Rational::zero()));
    for (r, &k) in POWERS.iter().enumerate() {
        for j in 0..3 {
            m[r][j] = eps_func(&mc[j][k])?;
        }
        rhs[r] = eps_func(&ec[k])?;
    }
    let mul = |a: &RatFunc, b: &RatFunc| a.mul(b);
    let add = |a: &RatFunc, b: &RatFunc| a.add(b);
    let sub = |a: &RatFunc, b: &RatFunc| a.sub(b);
    let d = det3(&m, mul, add, sub);
    if d.is_zero() {
        let rank = fit_at(alg, &Rational::from_integer(3.into())).map(|_| 3).unwrap_or(0);
        return Err(SpectrumError::SingularFit { rank });
    }
    let mut sol = Vec::new();
    for j in 0..3 {
        let mut mj = m.clone();
        for r in 0..3 {
            mj[r][j] = rhs[r].clone();
        }
        sol.push(det3(&mj, mul, add, sub).div(&d).expect("nonzero determinant"));
    }
    let mut residual = Vec::new();
    for k in 0..=5 {
        let mut acc = eps_func(&ec[k])?;
        for j in 0..3 {
            acc = acc.sub(&sol[j].mul(&eps_func(&mc[j][k])?));
        }
        residual.push(acc);
    }
    Ok(IdentityCoeffs { c5: sol[0].clone(), c3: sol[1].clone(), c1: sol[2].clone(), residual })
}

/// Fit at a fixed rational `ε`, by exact Gaussian elimination.
pub fn fit_at(alg: &NormalFormAlgebra, eps: &Rational) -> Result<IdentityCoeffsAt, SpectrumError> {
    let (mons, e5) = monomials(alg);
    let spec = |f: &RatPoly| -> Vec<Rational> {
        b_coeffs(&f.specialize(EPS, eps).compact()).iter().map(|c| c.constant_term()).collect()
    };
    let mc: Vec<Vec<Rational>> = mons.iter().map(spec).collect();
    let ec = spec(&e5);
    let a: Vec<Vec<Rational>> = POWERS.iter().map(|&k| (0..3).map(|j| mc[j][k].clone()).collect()).collect();
    let rhs: Vec<Rational> = POWERS.iter().map(|&k| ec[k].clone()).collect();
    let rank = linsolve::rank(&a);
    if rank < 3 {
        return Err(SpectrumError::SingularFit { rank });
    }
    let sol = linsolve::solve(&a, &rhs).ok_or(SpectrumError::SingularFit { rank })?;
    let residual = (0..=5)
        .map(|k| (0..3).fold(ec[k].clone(), |acc, j| acc - &sol[j] * &mc[j][k]))
        .collect();
    Ok(IdentityCoeffsAt { eps: eps.clone(), c5: sol[0].clone(), c3: sol[1].clone(), c1: sol[2].clone(), residual })
}

/// `g(E) = E₅ − c₅E₁⁵ − c₃E₁³E₂ − c₁E₁E₄` for floating inputs; `e` is
/// `(E₀, …, E₅)`.
pub fn g_value(c: [f64; 3], e: &[f64; 6]) -> f64 {
    e[5] - c[0] * e[1].powi(5) - c[1] * e[1].powi(3) * e[2] - c[2] * e[1] * e[4]
}

/// The sum of magnitudes of the terms of `g`, a scale for relative residuals.
pub fn g_scale(c: [f64; 3], e: &[f64; 6]) -> f64 {
    e[5].abs() + (c[0] * e[1].powi(5)).abs() + (c[1] * e[1].powi(3) * e[2]).abs() + (c[2] * e[1] * e[4]).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::expr::parse;
    use cartan_exact::rational::{int, rat};

    fn alg() -> &'static NormalFormAlgebra {
        NormalFormAlgebra::shared()
    }

    fn rf(num: &str, den: &str) -> RatFunc {
        let p = |s: &str| QPoly::from_poly(&parse(s).unwrap().to_poly().unwrap().to_rat().unwrap(), EPS).unwrap();
        RatFunc::new(EPS, p(num), p(den))
    }

    #[test]
    fn symbolic_fit_has_zero_residual() {
        let f = fit_symbolic(alg()).unwrap();
        assert!(f.residual_is_zero());
        // desk-derived closed forms
        assert_eq!(f.c5, rf("eps^2*(5*eps^4+24*eps^3+56*eps-168)", "(eps-2)^3*(eps+7)^5*(eps^2+3)"));
        assert_eq!(f.c3, rf("-eps^2*(2*eps^2+eps+8)", "(eps-2)^2*(eps+7)^3*(eps^2+3)"));
        assert_eq!(f.c1, rf("eps", "(eps-2)*(eps+7)"));
    }

    #[test]
    fn single_point_constraint_at_delta_zero() {
        let f = fit_at(alg(), &int(1)).unwrap();
        let lhs = &f.c5 * int(-32768) + &f.c3 * int(11776) - &f.c1 * int(3808);
        assert_eq!(lhs, int(392));
    }

    #[test]
    fn rational_and_symbolic_fits_agree() {
        let s = fit_symbolic(alg()).unwrap();
        for k in 1..=20 {
            let e = rat(k, 20);
            let f = fit_at(alg(), &e).unwrap();
            assert!(f.residual_is_zero());
            assert_eq!(s.at(&e).unwrap(), [f.c5, f.c3, f.c1]);
        }
    }

    #[test]
    fn common_denominator() {
        let s = fit_symbolic(alg()).unwrap();
        let n = s.common_denominator();
        let want = rf("(eps+7)^5*(eps-2)^3*(eps^2+3)", "1");
        assert_eq!(n, want.num().monic());
    }
}
