//! The Hessian at the normal-form point `(p, 0, q, 0, 0)`, `p² + q² = 1`,
//! its characteristic polynomial and the factorization into one linear and
//! two quadratic factors.
//!
//! Everything is expressed in `ε = 1 − δ`. Quadratic factors are scaled to
//! leading coefficient 4 so that their other coefficients have integer
//! content; the linear factor is kept monic, `S − ℓ(p, ε)`.

use crate::hessian::{symbolic_tilde, DELTA};
use crate::symmat::{berkowitz, SymMatrix5};
use crate::SpectrumError;
use cartan_exact::rational::{self, int};
use cartan_exact::{Interval, QPoly, QuadExt, RatPoly, Rational, SparsePoly, UniPoly};
use cartan_geometry::{CartanCubic, VARS};
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

pub const P: &str = "p";
pub const Q: &str = "q";
pub const EPS: &str = "eps";
pub const B: &str = "b";
pub const S: &str = "S";

/// Rows/columns of the two diagonal blocks at normal form.
pub const BLOCK3: [usize; 3] = [0, 1, 2];
pub const BLOCK2: [usize; 2] = [3, 4];

/// `a·S² + b·S + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub a: RatPoly,
    pub b: RatPoly,
    pub c: RatPoly,
}

impl Quadratic {
    pub fn disc(&self) -> RatPoly {
        &(&self.b * &self.b) - &(&self.a * &self.c).scale(&int(4))
    }

    pub fn to_unipoly(&self) -> UniPoly<Rational> {
        UniPoly::new(S, vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn monic(&self) -> UniPoly<Rational> {
        let lc = self.a.constant_term().recip();
        UniPoly::new(S, vec![self.c.scale(&lc), self.b.scale(&lc), RatPoly::constant(Rational::one())])
    }

    pub fn scaled(&self, k: &Rational) -> Quadratic {
        Quadratic { a: self.a.scale(k), b: self.b.scale(k), c: self.c.scale(k) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    L,
    APlus,
    AMinus,
    BPlus,
    BMinus,
}

impl Branch {
    pub const ALL: [Branch; 5] = [Branch::L, Branch::APlus, Branch::AMinus, Branch::BPlus, Branch::BMinus];

    /// 0 for the linear factor, 1 and 2 for the quadratics; used to break ties.
    pub fn factor_index(self) -> usize {
        match self {
            Branch::L => 0,
            Branch::APlus | Branch::AMinus => 1,
            Branch::BPlus | Branch::BMinus => 2,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Branch::L => 0,
            Branch::APlus | Branch::BPlus => 1,
            Branch::AMinus | Branch::BMinus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::L => "L",
            Branch::APlus => "A+",
            Branch::AMinus => "A-",
            Branch::BPlus => "B+",
            Branch::BMinus => "B-",
        }
    }

    /// The branch that `p ↦ −p` maps this one to (with a sign flip of the value).
    pub fn mirror(self) -> Branch {
        match self {
            Branch::L => Branch::L,
            Branch::APlus => Branch::AMinus,
            Branch::AMinus => Branch::APlus,
            Branch::BPlus => Branch::BMinus,
            Branch::BMinus => Branch::BPlus,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormalFormAlgebra {
    /// `D²w` at the normal-form point, entries in `(p, q, ε)` reduced by `q² = 1 − p²`.
    pub matrix: SymMatrix5<SparsePoly>,
    /// `(1, a₁, …, a₅)` in `(p, ε)`.
    pub coeffs: Vec<RatPoly>,
    /// The same coefficients written in `(b, ε)` with `b = p(p² − 3)`.
    pub coeffs_b: Vec<RatPoly>,
    /// Root `ℓ(p, ε)` of the linear factor.
    pub linear: RatPoly,
    /// Quadratic cofactor of `S − ℓ` in the 3×3 block.
    pub quad_a: Quadratic,
    /// Characteristic polynomial of the 2×2 block.
    pub quad_b: Quadratic,
}

fn c(r: Rational) -> RatPoly {
    RatPoly::constant(r)
}

fn one_minus_p2() -> SparsePoly {
    let p = SparsePoly::var(P);
    &SparsePoly::constant(QuadExt::one()) - &(&p * &p)
}

fn reduce_q(f: &SparsePoly) -> Result<SparsePoly, SpectrumError> {
    Ok(f.reduce_power(Q, 2, &one_minus_p2())?)
}

fn rational_part(f: &SparsePoly, what: &str) -> Result<RatPoly, SpectrumError> {
    if f.has_var(Q) && f.degree_in(Q) > 0 {
        return Err(SpectrumError::Structure(format!("{what} still depends on q")));
    }
    f.to_rat().map(|r| r.compact()).ok_or_else(|| SpectrumError::Structure(format!("{what} has irrational coefficients")))
}

/// Writes `f(p, …)` as a polynomial in `b = p³ − 3p`, when possible.
pub fn to_b_expansion(f: &RatPoly) -> Result<RatPoly, SpectrumError> {
    let bp = {
        let p = RatPoly::var(P);
        &(&(&p * &p) * &p) - &p.scale(&int(3))
    };
    let mut rest = f.clone();
    let mut out = RatPoly::zero();
    while !rest.is_zero() {
        let d = if rest.has_var(P) { rest.degree_in(P) } else { 0 };
        if d % 3 != 0 {
            return Err(SpectrumError::Structure(format!("not a polynomial in b: p-degree {d}")));
        }
        let lead = UniPoly::from_poly(&rest, P).coeff(d as usize);
        let j = d / 3;
        out = &out + &(&lead * &RatPoly::var(B).pow(j));
        rest = &rest - &(&lead * &bp.pow(j));
    }
    Ok(out)
}

/// Substitutes `b = p(p² − 3)` back.
pub fn from_b_expansion(f: &RatPoly) -> RatPoly {
    let p = RatPoly::var(P);
    let bp = &(&(&p * &p) * &p) - &p.scale(&int(3));
    f.substitute(B, &bp).expect("substitution by a polynomial")
}

fn unipoly_from_coeffs(c: &[RatPoly]) -> UniPoly<Rational> {
    // `c` is (1, c₁, …, cₙ), highest degree first
    UniPoly::new(S, c.iter().rev().cloned().collect())
}

/// The simplest rational in `[lo, hi]`.
pub fn simplest_rational(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if fl == *lo {
        return lo.clone();
    }
    if &fl + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    let inner = simplest_rational(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// The unique rational root of `f`, if exactly one exists with a modest
/// denominator.
fn unique_rational_root(f: &QPoly) -> Option<Rational> {
    let lc = f.leading();
    let bound = f.coeffs().iter().map(|x| (x / &lc).abs()).max()? + Rational::one();
    let width = rational::pow2(-120);
    let mut found = Vec::new();
    for r in f.isolate_roots(&-bound.clone(), &bound, &width) {
        let cand = match r.exact {
            Some(x) => x,
            None => simplest_rational(&r.lo, &r.hi),
        };
        if f.eval(&cand).is_zero() {
            found.push(cand);
        }
    }
    (found.len() == 1).then(|| found.pop().unwrap())
}

/// Lagrange interpolation on a tensor grid.
fn interpolate(pn: &[Rational], en: &[Rational], vals: &[Vec<Rational>]) -> RatPoly {
    let basis = |nodes: &[Rational], i: usize, var: &str| -> RatPoly {
        let mut acc = RatPoly::constant(Rational::one());
        for (k, xk) in nodes.iter().enumerate() {
            if k != i {
                let lin = &RatPoly::var(var) - &c(xk.clone());
                acc = (&acc * &lin).scale(&(&nodes[i] - xk).recip());
            }
        }
        acc
    };
    let mut out = RatPoly::zero();
    for (i, _) in pn.iter().enumerate() {
        let li = basis(pn, i, P);
        for (j, _) in en.iter().enumerate() {
            let mj = basis(en, j, EPS);
            out = &out + &(&li * &mj).scale(&vals[i][j]);
        }
    }
    out.compact()
}

fn specialize2(f: &RatPoly, p: &Rational, e: &Rational) -> Rational {
    f.specialize(P, p).specialize(EPS, e).constant_term()
}

/// Finds `ℓ` with `K(ℓ) ≡ 0` by sampling rational roots on a grid and
/// interpolating; the caller verifies the result by exact division.
fn find_linear_root(k: &[RatPoly], deg_p: usize, deg_e: usize) -> Result<RatPoly, SpectrumError> {
    for shift in 0..4i64 {
        let pn: Vec<Rational> = (0..=deg_p as i64).map(|i| int(2 + i + 7 * shift)).collect();
        let en: Vec<Rational> = (0..=deg_e as i64).map(|j| rational::rat(3 + 2 * j + 11 * shift, 2)).collect();
        let mut vals = Vec::new();
        let mut ok = true;
        'grid: for pv in &pn {
            let mut row = Vec::new();
            for ev in &en {
                let coeffs: Vec<Rational> = k.iter().rev().map(|ck| specialize2(ck, pv, ev)).collect();
                match unique_rational_root(&QPoly::new(coeffs)) {
                    Some(r) => row.push(r),
                    None => {
                        ok = false;
                        break 'grid;
                    }
                }
            }
            vals.push(row);
        }
        if ok {
            return Ok(interpolate(&pn, &en, &vals));
        }
    }
    Err(SpectrumError::Structure("no rational root pattern found for the linear factor".into()))
}

impl NormalFormAlgebra {
    pub fn compute(p5: &CartanCubic) -> Result<Self, SpectrumError> {
        let tilde = symbolic_tilde(p5)?;
        let eps = SparsePoly::var(EPS);
        let delta = &SparsePoly::constant(QuadExt::one()) - &eps;
        let zero = SparsePoly::zero();
        let images: Vec<SparsePoly> = vec![SparsePoly::var(P), zero.clone(), SparsePoly::var(Q), zero.clone(), zero];
        let matrix = tilde.try_map(|e| -> Result<SparsePoly, SpectrumError> {
            let mut f = e.clone();
            for (v, img) in VARS.iter().zip(&images) {
                f = f.substitute(v, img)?;
            }
            f = f.substitute(DELTA, &delta)?;
            reduce_q(&f)
        })?;
        for &i in &BLOCK3 {
            for &j in &BLOCK2 {
                if !matrix.get(i, j).is_zero() {
                    return Err(SpectrumError::Structure(format!("entry ({i},{j}) breaks the 3+2 block structure")));
                }
            }
        }
        let full = berkowitz(&matrix.rows());
        let coeffs: Vec<RatPoly> = full
            .iter()
            .enumerate()
            .map(|(k, f)| rational_part(&reduce_q(f)?, &format!("a{k}")))
            .collect::<Result<_, _>>()?;
        let coeffs_b: Vec<RatPoly> = coeffs.iter().map(to_b_expansion).collect::<Result<_, _>>()?;

        let k3: Vec<RatPoly> = berkowitz(&matrix.block(&BLOCK3))
            .iter()
            .map(|f| rational_part(&reduce_q(f)?, "cubic block"))
            .collect::<Result<_, _>>()?;
        let k2: Vec<RatPoly> = berkowitz(&matrix.block(&BLOCK2))
            .iter()
            .map(|f| rational_part(&reduce_q(f)?, "quadratic block"))
            .collect::<Result<_, _>>()?;
        let product = unipoly_from_coeffs(&k3).mul(&unipoly_from_coeffs(&k2));
        if product != unipoly_from_coeffs(&coeffs) {
            return Err(SpectrumError::Structure("block characteristic polynomials do not multiply to the full one".into()));
        }

        let linear = find_linear_root(&k3, 5, 3)?;
        let lin_factor = UniPoly::new(S, vec![linear.neg(), c(Rational::one())]);
        let (quot, rem) = unipoly_from_coeffs(&k3).div_rem(&lin_factor)?;
        if !rem.is_zero() || quot.degree() != Some(2) {
            return Err(SpectrumError::Structure("interpolated linear factor does not divide the cubic block".into()));
        }
        let four = int(4);
        let quad_a = Quadratic {
            a: c(four.clone()),
            b: quot.coeff(1).scale(&four).compact(),
            c: quot.coeff(0).scale(&four).compact(),
        };
        let quad_b = Quadratic { a: c(four.clone()), b: k2[1].scale(&four).compact(), c: k2[2].scale(&four).compact() };
        Ok(NormalFormAlgebra { matrix, coeffs, coeffs_b, linear, quad_a, quad_b })
    }

    /// Shared instance for the standard cubic.
    pub fn shared() -> &'static NormalFormAlgebra {
        static A: OnceLock<NormalFormAlgebra> = OnceLock::new();
        A.get_or_init(|| NormalFormAlgebra::compute(&cartan_geometry::build_p5()).expect("normal-form algebra"))
    }

    /// `Eₖ = (−1)ᵏ aₖ` in `(b, ε)`.
    pub fn elementary_b(&self, k: usize) -> RatPoly {
        if k % 2 == 0 {
            self.coeffs_b[k].clone()
        } else {
            self.coeffs_b[k].neg()
        }
    }

    /// The linear factor `S − ℓ`.
    pub fn linear_factor(&self) -> UniPoly<Rational> {
        UniPoly::new(S, vec![self.linear.neg(), c(Rational::one())])
    }

    pub fn quadratic(&self, which: Branch) -> &Quadratic {
        match which.factor_index() {
            1 => &self.quad_a,
            _ => &self.quad_b,
        }
    }

    /// `disc(A)/4`, the radicand in the `A` roots `(−β ± 2√(disc/4))/8`.
    pub fn disc_a_quarter(&self) -> RatPoly {
        self.quad_a.disc().scale(&rational::rat(1, 4))
    }

    /// Branch value at floating `(p, ε)`.
    pub fn branch_f64(&self, br: Branch, p: f64, eps: f64) -> f64 {
        let pt = [(P, p), (EPS, eps)];
        let ev = |f: &RatPoly| f.map_coeffs(|x| rational::to_f64(x)).eval_f64_named(&pt).unwrap_or(f64::NAN);
        match br {
            Branch::L => ev(&self.linear),
            _ => {
                let qd = self.quadratic(br);
                let (a, b, cc) = (ev(&qd.a), ev(&qd.b), ev(&qd.c));
                let d = (b * b - 4.0 * a * cc).max(0.0).sqrt();
                (-b + br.sign() as f64 * d) / (2.0 * a)
            }
        }
    }

    /// Exact branch value `u + v√d` at rational `(p, ε)`.
    pub fn branch_exact(&self, br: Branch, p: &Rational, eps: &Rational) -> crate::ordering::QSurd {
        use crate::ordering::QSurd;
        match br {
            Branch::L => QSurd::rational(specialize2(&self.linear, p, eps)),
            _ => {
                let qd = self.quadratic(br);
                let a = specialize2(&qd.a, p, eps);
                let b = specialize2(&qd.b, p, eps);
                let d = specialize2(&qd.disc(), p, eps);
                let two_a = &a * int(2);
                QSurd::new(-&b / &two_a, int(br.sign() as i64) / &two_a, d)
            }
        }
    }

    /// Interval enclosure of a coefficient polynomial on a box in `(p, ε)`.
    pub fn enclose(&self, f: &RatPoly, p: &Interval, eps: &Interval) -> Result<Interval, SpectrumError> {
        let f = f.with_vars(&[P.to_string(), EPS.to_string()])?;
        Ok(f.eval_interval(&[p.clone(), eps.clone()])?)
    }
}

/// Resultants between the three factors, plus the cofactor `r` of
/// `144(p² − 1)²` in `Res(A, B)`.
#[derive(Clone, Debug)]
pub struct Resultants {
    /// `Res_S(S − ℓ, A)` with `A` of leading coefficient 4.
    pub la: RatPoly,
    /// `Res_S(S − ℓ, B)`.
    pub lb: RatPoly,
    /// `Res_S(A, B)`, both of leading coefficient 4.
    pub ab: RatPoly,
    /// `Res_S(A, B)` for the monic quadratics.
    pub ab_monic: RatPoly,
    pub la_monic: RatPoly,
    pub lb_monic: RatPoly,
    /// `Res(A, B) / (144(p² − 1)²)`.
    pub r: RatPoly,
}

impl Resultants {
    pub fn compute(alg: &NormalFormAlgebra) -> Result<Self, SpectrumError> {
        let l = alg.linear_factor();
        let a = alg.quad_a.to_unipoly();
        let b = alg.quad_b.to_unipoly();
        let am = alg.quad_a.monic();
        let bm = alg.quad_b.monic();
        let la = l.resultant(&a)?.compact();
        let lb = l.resultant(&b)?.compact();
        let ab = a.resultant(&b)?.compact();
        let p = RatPoly::var(P);
        let p2m1 = &(&p * &p) - &c(Rational::one());
        let lead = (&p2m1 * &p2m1).scale(&int(144));
        let r = ab.div_exact(&lead).map_err(|_| SpectrumError::Structure("Res(A,B) is not divisible by 144(p²−1)²".into()))?;
        Ok(Resultants {
            la,
            lb,
            ab,
            ab_monic: am.resultant(&bm)?.compact(),
            la_monic: l.resultant(&am)?.compact(),
            lb_monic: l.resultant(&bm)?.compact(),
            r: r.compact(),
        })
    }

    pub fn shared() -> &'static Resultants {
        static R: OnceLock<Resultants> = OnceLock::new();
        R.get_or_init(|| Resultants::compute(NormalFormAlgebra::shared()).expect("resultants"))
    }
}

/// Writes an even polynomial in `p` as a polynomial in `q = p²`.
pub fn even_to_q(f: &RatPoly) -> Result<RatPoly, SpectrumError> {
    let Some(i) = f.var_index(P) else {
        return Ok(f.clone());
    };
    let mut vars: Vec<String> = f.vars().to_vec();
    vars[i] = "q".to_string();
    let mut terms = Vec::new();
    for (m, v) in f.terms() {
        if m[i] % 2 != 0 {
            return Err(SpectrumError::Structure("odd power of p".into()));
        }
        let mut m = m.clone();
        m[i] /= 2;
        terms.push((m, v.clone()));
    }
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    Ok(RatPoly::from_terms(&names, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::expr::parse_poly;
    use cartan_exact::rational::rat;

    fn rp(s: &str) -> RatPoly {
        parse_poly(s).unwrap().to_rat().unwrap()
    }

    fn alg() -> &'static NormalFormAlgebra {
        NormalFormAlgebra::shared()
    }

    #[test]
    fn simplest_rational_finds_small_denominators() {
        assert_eq!(simplest_rational(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_rational(&rat(2, 7), &rat(3, 10)), rat(2, 7));
        let x = rat(-355, 113);
        let w = rational::pow2(-40);
        assert_eq!(simplest_rational(&(&x - &w), &(&x + &w)), x);
    }

    #[test]
    fn b_expansion_round_trips() {
        let f = rp("eps*(p^3-3*p)^2 + 7*(p^3-3*p) - eps^2");
        let g = to_b_expansion(&f).unwrap();
        assert_eq!(g, rp("eps*b^2 + 7*b - eps^2"));
        assert_eq!(from_b_expansion(&g), f);
        assert!(to_b_expansion(&rp("p^2")).is_err());
    }

    #[test]
    fn coefficients_at_p1_delta0() {
        let want = [1, 8, -23, -134, 476, -392];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(specialize2(&alg().coeffs[k], &int(1), &int(1)), int(*w), "a{k}");
        }
    }

    #[test]
    fn a1_a2_closed_forms() {
        // independent desk derivation in (b, δ), with δ = 1 − ε
        let d = |s: &str| rp(s).substitute("delta", &rp("1 - eps")).unwrap().compact();
        assert_eq!(alg().coeffs_b[1], d("(delta-8)*(delta+1)*b/2"));
        assert_eq!(
            alg().coeffs_b[2],
            d("-((4*delta^3-17*delta^2-34*delta-13)*b^2 + 36*delta^2-72*delta+144)/4")
        );
        assert_eq!(
            alg().coeffs_b[3],
            d("b*((6*delta^4-19*delta^3-57*delta^2-33*delta-1)*b^2 + 108*delta^3-216*delta^2+432*delta+540)/8")
        );
        assert_eq!(
            alg().coeffs_b[5],
            d("b*(delta-1)*(b^2*(delta^2-4*delta-5)+36*delta-36)*(b^2*(delta+1)^3-108*delta+108)/32")
        );
    }

    #[test]
    fn factor_shapes() {
        let a = alg();
        assert_eq!(a.linear, rp("p*((2-eps)*p^2 + 3*eps)/2"));
        let b = rp("p*(p^2-3)");
        let want_disc_a = rp("4*((16-eps^2)*(4-eps^2)*(p^3-3*p)^2 + 144*eps^2)");
        assert_eq!(a.quad_a.disc(), want_disc_a);
        assert_eq!(a.quad_b.disc(), rp("432*(4-p^2)"));
        let _ = b;
    }

    #[test]
    fn resultants_match_frozen_values() {
        let r = Resultants::shared();
        let q = |s: &str| rp(s);
        assert_eq!(
            even_to_q(&r.r).unwrap(),
            q("(eps^2-4)^2*q^4 - 12*(eps^2-4)^2*q^3 + 3*(4-eps^2)*(72-17*eps^2)*q^2 - 108*(eps^2-4)^2*q + 144*(3-eps^2)^2")
        );
        assert_eq!(r.la, q("3*(p^2-4)*(p^4*(eps^2-4)+3*eps^2)"));
        assert_eq!(r.lb, q("108*(p^2-1)"));
        assert_eq!(r.la_monic, r.la.scale(&rat(1, 4)));
    }

    /// Numeric oracle: `lc(f)^deg g · lc(g)^deg f · ∏(αᵢ − βⱼ)`.
    #[test]
    fn resultant_sign_convention_against_root_products() {
        let a = alg();
        let r = Resultants::shared();
        for &(p, e) in &[(0.3, 0.7), (-0.8, 0.2), (0.55, 1.0)] {
            let l = a.branch_f64(Branch::L, p, e);
            let ap = a.branch_f64(Branch::APlus, p, e);
            let am = a.branch_f64(Branch::AMinus, p, e);
            let bp = a.branch_f64(Branch::BPlus, p, e);
            let bm = a.branch_f64(Branch::BMinus, p, e);
            let ev = |f: &RatPoly| f.map_coeffs(|x| rational::to_f64(x)).eval_f64_named(&[(P, p), (EPS, e)]).unwrap();
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * (1.0 + y.abs());
            assert!(close(ev(&r.la), 4.0 * (l - ap) * (l - am)));
            assert!(close(ev(&r.lb), 4.0 * (l - bp) * (l - bm)));
            let ab = 256.0 * (ap - bp) * (ap - bm) * (am - bp) * (am - bm);
            assert!(close(ev(&r.ab), ab));
            assert!(close(ev(&r.ab_monic), ab / 256.0));
        }
    }
}
