//! Partial derivatives `∂g/∂λᵢ` of `g = E₅ − c₅E₁⁵ − c₃E₁³E₂ − c₁E₁E₄` on
//! each spectral branch.
//!
//! With `t` the eigenvalue being varied, `∂Eₖ/∂λ = Σⱼ (−t)ʲ Eₖ₋₁₋ⱼ`, so the
//! partial is a quartic `Φ(t)` in `t` with coefficients in `(p, ε)`. Clearing
//! the common denominator `N(ε)` of the `cⱼ` gives a polynomial `N·Φ`; on a
//! quadratic branch the root is `u + v√D` and `N·Φ` evaluates to `s + t√D`.

use crate::charpoly::{from_b_expansion, Branch, NormalFormAlgebra, EPS, P};
use crate::identity::{fit_symbolic, IdentityCoeffs};
use crate::ordering::QSurd;
use crate::SpectrumError;
use cartan_exact::expr::Surd;
use cartan_exact::rational::{int, to_f64};
use cartan_exact::{QPoly, RatPoly, Rational, SparsePoly, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// Variable of the quartic `Φ`.
pub const T: &str = "t";

/// `N·Φ` evaluated on one branch: `s + t·√d` (with `t = 0`, `d = 1` on `L`).
#[derive(Clone, Debug)]
pub struct BranchForm {
    pub branch: Branch,
    pub s: RatPoly,
    pub t: RatPoly,
    pub d: RatPoly,
}

impl BranchForm {
    pub fn at(&self, p: &Rational, eps: &Rational) -> QSurd {
        let ev = |f: &RatPoly| f.specialize(P, p).specialize(EPS, eps).compact().constant_term();
        QSurd::new(ev(&self.s), ev(&self.t), ev(&self.d))
    }

    pub fn at_f64(&self, p: f64, eps: f64) -> f64 {
        let pt = [(P, p), (EPS, eps)];
        let ev = |f: &RatPoly| f.map_coeffs(to_f64).eval_f64_named(&pt).unwrap_or(f64::NAN);
        ev(&self.s) + ev(&self.t) * ev(&self.d).max(0.0).sqrt()
    }

    /// As a formula value, for comparison with printed expressions.
    pub fn to_surd(&self) -> Surd {
        let lift = SparsePoly::from_rat;
        if self.t.is_zero() {
            return Surd::poly(lift(&self.s));
        }
        Surd::new(lift(&self.s), lift(&self.t), Some(lift(&self.d)), SparsePoly::from_i64(1))
    }

    /// `s − t'√d` with `t' = −t`, the shape used by the certifier.
    pub fn sqrt_diff(&self) -> (RatPoly, RatPoly, RatPoly) {
        (self.s.clone(), self.t.neg(), self.d.clone())
    }
}

#[derive(Clone, Debug)]
pub struct GFunction {
    pub coeffs: IdentityCoeffs,
    /// Common denominator `N(ε)` of `c₅, c₃, c₁` (monic).
    pub n: QPoly,
    /// `N·c₅, N·c₃, N·c₁` as polynomials in `ε`.
    pub nc: [RatPoly; 3],
    /// Coefficients of `N·Φ(t)` in ascending powers of `t`, in `(p, ε)`.
    pub nphi: Vec<RatPoly>,
    pub branches: Vec<BranchForm>,
}

fn k(r: i64) -> RatPoly {
    RatPoly::constant(int(r))
}

/// `d = k²·d'`, pulling the largest square out of the integer content.
fn pull_square(d: &RatPoly) -> (Rational, RatPoly) {
    let mut g = BigInt::zero();
    for (_, c) in d.terms() {
        if !c.is_integer() {
            return (Rational::one(), d.clone());
        }
        g = g.gcd(c.numer());
    }
    if g.is_zero() {
        return (Rational::one(), d.clone());
    }
    let mut s = BigInt::one();
    let mut rest = g;
    let mut f = BigInt::from(2);
    while &f * &f <= rest {
        let ff = &f * &f;
        while (&rest % &ff).is_zero() {
            rest /= &ff;
            s *= &f;
        }
        f += 1;
    }
    let s = Rational::from_integer(s);
    (s.clone(), d.scale(&(&s * &s).recip()))
}

impl GFunction {
    pub fn compute(alg: &NormalFormAlgebra) -> Result<Self, SpectrumError> {
        let coeffs = fit_symbolic(alg)?;
        if !coeffs.residual_is_zero() {
            return Err(SpectrumError::Structure("identity residual is not zero".into()));
        }
        let n = coeffs.common_denominator();
        let nc_of = |c: &cartan_exact::RatFunc| -> RatPoly {
            let (q, r) = n.div_rem(c.den());
            debug_assert!(r.is_zero());
            c.num().mul(&q).to_poly(EPS)
        };
        let nc = [nc_of(&coeffs.c5), nc_of(&coeffs.c3), nc_of(&coeffs.c1)];
        let np = n.to_poly(EPS);

        let e: Vec<RatPoly> = (0..=5).map(|i| from_b_expansion(&alg.elementary_b(i))).collect();
        let t = RatPoly::var(T);
        // dEₖ(t) = Σ_{j<k} (−t)ʲ Eₖ₋₁₋ⱼ
        let de = |kk: usize| -> RatPoly {
            (0..kk).fold(RatPoly::zero(), |acc, j| &acc + &(&t.neg().pow(j as u32) * &e[kk - 1 - j]))
        };
        let e1 = &e[1];
        let e1_2 = e1 * e1;
        let e1_3 = &e1_2 * e1;
        let e1_4 = &e1_3 * e1;
        let term5 = (&e1_4 * &nc[0]).scale(&int(5));
        let term3 = &nc[1] * &(&(&e1_2 * &e[2]).scale(&int(3)) + &(&e1_3 * &(e1 - &t)));
        let term1 = &nc[2] * &(&e[4] + &(e1 * &de(4)));
        let full = &(&(&(&np * &de(5)) - &term5) - &term3) - &term1;
        let u = UniPoly::from_poly(&full.compact(), T);
        let nphi: Vec<RatPoly> = (0..=4).map(|i| u.coeff(i).compact()).collect();

        let mut g = GFunction { coeffs, n, nc, nphi, branches: Vec::new() };
        g.branches = Branch::ALL.iter().map(|&b| g.branch_form(alg, b)).collect();
        Ok(g)
    }

    pub fn shared() -> &'static GFunction {
        static G: OnceLock<GFunction> = OnceLock::new();
        G.get_or_init(|| GFunction::compute(NormalFormAlgebra::shared()).expect("g partials"))
    }

    /// `N·Φ` at `t = u + v√d` by Horner's rule in `ℚ[p, ε][√d]`.
    fn eval_at_root(&self, u: &RatPoly, v: &RatPoly, d: &RatPoly) -> (RatPoly, RatPoly) {
        let mut s = RatPoly::zero();
        let mut tt = RatPoly::zero();
        for c in self.nphi.iter().rev() {
            let ns = &(&s * u) + &(&(&tt * v) * d);
            let nt = &(&s * v) + &(&tt * u);
            s = &ns + c;
            tt = nt;
        }
        (s.compact(), tt.compact())
    }

    fn branch_form(&self, alg: &NormalFormAlgebra, br: Branch) -> BranchForm {
        match br {
            Branch::L => {
                let (s, _) = self.eval_at_root(&alg.linear, &RatPoly::zero(), &k(1));
                BranchForm { branch: br, s, t: RatPoly::zero(), d: k(1) }
            }
            _ => {
                let q = alg.quadratic(br);
                let two_a = q.a.constant_term() * int(2);
                let (root_k, d) = pull_square(&q.disc());
                let u = q.b.scale(&(-two_a.recip()));
                let v = RatPoly::constant(int(br.sign() as i64) * root_k / &two_a);
                let (s, t) = self.eval_at_root(&u, &v, &d);
                BranchForm { branch: br, s, t, d }
            }
        }
    }

    pub fn form(&self, br: Branch) -> &BranchForm {
        &self.branches[Branch::ALL.iter().position(|&b| b == br).unwrap()]
    }

    /// Exact `∂g/∂λ` on branch `br` at rational `(p, ε)`, as `(N·Φ value, N(ε))`.
    pub fn partial_exact(&self, br: Branch, p: &Rational, eps: &Rational) -> (QSurd, Rational) {
        (self.form(br).at(p, eps), self.n.eval(eps))
    }

    pub fn partial_f64(&self, br: Branch, p: f64, eps: f64) -> f64 {
        self.form(br).at_f64(p, eps) / self.n.eval_f64(eps)
    }

    pub fn c_f64(&self, eps: f64) -> [f64; 3] {
        let f = |r: &cartan_exact::RatFunc| r.num().eval_f64(eps) / r.den().eval_f64(eps);
        [f(&self.coeffs.c5), f(&self.coeffs.c3), f(&self.coeffs.c1)]
    }
}

/// `Φ(t)` from floating elementary symmetric values `(E₀, …, E₅)`.
pub fn phi_f64(c: [f64; 3], e: &[f64; 6], t: f64) -> f64 {
    let de = |kk: usize| (0..kk).map(|j| (-t).powi(j as i32) * e[kk - 1 - j]).sum::<f64>();
    let e1 = e[1];
    de(5) - 5.0 * c[0] * e1.powi(4) - c[1] * (3.0 * e1 * e1 * e[2] + e1.powi(3) * (e1 - t)) - c[2] * (e[4] + e1 * de(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::g_value;
    use crate::ordering::ordered_spectrum;
    use crate::symmat::elementary_symmetric;
    use cartan_exact::rational::rat;

    fn gf() -> &'static GFunction {
        GFunction::shared()
    }

    #[test]
    fn common_denominator_shape() {
        let want = QPoly::from_poly(
            &cartan_exact::expr::parse_poly("(eps+7)^5*(eps-2)^3*(eps^2+3)").unwrap().to_rat().unwrap(),
            EPS,
        )
        .unwrap();
        assert_eq!(gf().n, want);
    }

    #[test]
    fn partials_at_delta_zero_p_one() {
        let alg = NormalFormAlgebra::shared();
        let sp = ordered_spectrum(alg, 1.0, 1.0);
        let mut got: Vec<f64> = sp.labels.iter().map(|&b| gf().partial_f64(b, 1.0, 1.0)).collect();
        got.sort_by(|a, b| b.total_cmp(a));
        let want = [106.3125, 106.3125, 106.3125, 45.5625, 45.5625];
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-9, "{got:?}");
        }
    }

    #[test]
    fn finite_difference_oracle() {
        let alg = NormalFormAlgebra::shared();
        for &(p, eps) in &[(1.0, 1.0), (0.3, 0.5), (-0.7, 0.2), (0.9, 0.05)] {
            let sp = ordered_spectrum(alg, p, eps);
            let c = gf().c_f64(eps);
            let h = 1e-5;
            for i in 0..5 {
                let mut up = sp.values;
                let mut dn = sp.values;
                up[i] += h;
                dn[i] -= h;
                let fd = (g_value(c, &elementary_symmetric(&up)) - g_value(c, &elementary_symmetric(&dn))) / (2.0 * h);
                let closed = gf().partial_f64(sp.labels[i], p, eps);
                let direct = phi_f64(c, &elementary_symmetric(&sp.values), sp.values[i]);
                assert!((fd - closed).abs() < 1e-5 * (1.0 + closed.abs()), "p={p} eps={eps} i={i}: {fd} vs {closed}");
                assert!((direct - closed).abs() < 1e-9 * (1.0 + closed.abs()));
            }
        }
    }

    #[test]
    fn g_vanishes_on_the_spectrum() {
        let alg = NormalFormAlgebra::shared();
        for &(p, eps) in &[(0.2, 0.9), (-0.5, 0.4), (1.0, 0.1)] {
            let sp = ordered_spectrum(alg, p, eps);
            let c = gf().c_f64(eps);
            let e = elementary_symmetric(&sp.values);
            assert!(g_value(c, &e).abs() < 1e-9 * crate::identity::g_scale(c, &e));
        }
    }

    #[test]
    fn reflection_swaps_plus_and_minus() {
        for (p, eps) in [(rat(1, 3), rat(1, 2)), (rat(-4, 5), rat(1, 7)), (rat(2, 9), int(1))] {
            for (a, b) in [(Branch::APlus, Branch::AMinus), (Branch::BPlus, Branch::BMinus), (Branch::L, Branch::L)] {
                let x = gf().form(a).at(&-p.clone(), &eps);
                let y = gf().form(b).at(&p, &eps);
                assert!(x.exact_eq(&y), "{a:?} at -p vs {b:?} at p");
            }
        }
    }

    #[test]
    fn b_radicand_absorbs_three() {
        let d = &gf().form(Branch::BPlus).d;
        assert_eq!(*d, cartan_exact::expr::parse_poly("3*(4-p^2)").unwrap().to_rat().unwrap());
    }
}
