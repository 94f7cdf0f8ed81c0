//! The inequalities behind the main theorem, stated for the recomputed
//! partials `ĝ = κ·∂g/∂λ` on each spectral branch, and the positivity of
//! the resultant factor `r`.

use crate::bnb::{certify, CertOutcome, CertifyOptions};
use crate::certificate::Certificate;
use crate::domain::DomainBox;
use crate::goal::{Goal, Margin, SqrtDiffExpr};
use crate::CertifyError;
use cartan_exact::expr::parse_poly;
use cartan_exact::rational::{from_f64, int, rat, to_f64};
use cartan_exact::{RatFunc, RatPoly, Rational};
use cartan_spectrum::charpoly::{even_to_q, EPS, P, Q};
use cartan_spectrum::gfun::GFunction;
use cartan_spectrum::Branch;
use num_traits::{Signed, Zero};

fn rp(s: &str) -> RatPoly {
    parse_poly(s).expect("fixed polynomial").to_rat().expect("rational polynomial")
}

/// A lower bound `ĝ > claimed·base` on one branch.
#[derive(Clone, Debug)]
pub struct GBound {
    pub name: &'static str,
    pub branch: Branch,
    pub base: Margin,
    pub claimed: Rational,
}

impl GBound {
    pub fn margin(&self) -> Margin {
        self.base.scaled(&self.claimed)
    }

    pub fn describe(&self) -> String {
        format!("{} on {}: > {}", self.name, self.branch.name(), self.margin())
    }
}

/// `g₁ > 2ε⁴` on `A±`, `g₂ ≥ 15ε⁴` on `B±` and `g₃ ≥ min{1620ε, 4840}` on `L`.
pub fn claimed_bounds() -> Vec<GBound> {
    let e4 = Margin::poly(rp("eps^4"));
    let g3 = Margin::min_of(vec![rp("1620*eps"), rp("4840")]);
    vec![
        GBound { name: "g1", branch: Branch::APlus, base: e4.clone(), claimed: int(2) },
        GBound { name: "g1", branch: Branch::AMinus, base: e4.clone(), claimed: int(2) },
        GBound { name: "g2", branch: Branch::BPlus, base: e4.clone(), claimed: int(15) },
        GBound { name: "g2", branch: Branch::BMinus, base: e4, claimed: int(15) },
        GBound { name: "g3", branch: Branch::L, base: g3, claimed: int(1) },
    ]
}

/// `[−1, 1] × [ε₀, 1]` in `(p, ε)`.
pub fn g_box(eps0: &Rational) -> DomainBox {
    DomainBox::new(&[(P, int(-1), int(1)), (EPS, eps0.clone(), int(1))]).expect("valid box")
}

/// `ĝ > margin` with `ĝ = (num/den)·(s + t√d)` and `den > 0`, as
/// `num·s − margin·den − (−num·t)·√d > 0`.
pub fn normalized_goal(gf: &GFunction, norm: &RatFunc, br: Branch, margin: &Margin) -> Goal {
    let f = gf.form(br);
    let num = norm.num_poly();
    let den = norm.den_poly();
    let s = &f.s * &num;
    let m = margin.times(&den);
    if f.t.is_zero() {
        Goal::positive(s, m)
    } else {
        Goal::sqrt_diff(SqrtDiffExpr { s, t: (&f.t * &num).neg(), d: f.d.clone() }, m)
    }
}

/// Floating value of `ĝ` at `(p, ε)`.
pub fn ghat_f64(gf: &GFunction, norm: &RatFunc, br: Branch, p: f64, eps: f64) -> f64 {
    let k = norm.num().eval_f64(eps) / norm.den().eval_f64(eps);
    k * gf.form(br).at_f64(p, eps)
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub bound: GBound,
    pub outcome: CertOutcome,
    /// The normalization denominator is certified positive on the box.
    pub den_positive: bool,
    /// When the claim is not certified: the largest certified constant in
    /// place of `claimed`, with its certificate.
    pub largest: Option<(Rational, Certificate)>,
}

impl BoundReport {
    pub fn confirmed(&self) -> bool {
        self.den_positive && self.outcome.is_certified()
    }
}

pub fn certify_bound(
    gf: &GFunction,
    norm: &RatFunc,
    bound: &GBound,
    eps0: &Rational,
    opts: &CertifyOptions,
    search: bool,
) -> Result<BoundReport, CertifyError> {
    let bx = g_box(eps0);
    let den_box = DomainBox::new(&[(EPS, eps0.clone(), int(1))])?;
    let den_positive = certify(&Goal::positive(norm.den_poly(), Margin::zero()), &den_box, opts)?.is_certified();
    let goal = normalized_goal(gf, norm, bound.branch, &bound.margin());
    let outcome = certify(&goal, &bx, opts)?;
    let largest = if outcome.is_certified() || !search {
        None
    } else {
        let hi = match &outcome {
            CertOutcome::CounterexampleCandidate(cx) => {
                let (p, e) = (to_f64(&cx.point[0]), to_f64(&cx.point[1]));
                let base = bound.base.at(bx.vars(), &cx.point)?;
                let v = ghat_f64(gf, norm, bound.branch, p, e) / to_f64(&base);
                from_f64(v.max(0.0) * 1.001).unwrap_or_else(|| bound.claimed.clone()).min(bound.claimed.clone())
            }
            _ => bound.claimed.clone(),
        };
        largest_constant(|k| normalized_goal(gf, norm, bound.branch, &bound.base.scaled(k)), &bx, &hi, opts)?
    };
    Ok(BoundReport { bound: bound.clone(), outcome, den_positive, largest })
}

/// Bisection on `k ∈ [0, hi]` for the largest `k` whose goal certifies,
/// to relative precision 1/1024; the result is rounded to a short dyadic.
pub fn largest_constant(
    build: impl Fn(&Rational) -> Goal,
    bx: &DomainBox,
    hi: &Rational,
    opts: &CertifyOptions,
) -> Result<Option<(Rational, Certificate)>, CertifyError> {
    let zero = Rational::zero();
    let mut best = match certify(&build(&zero), bx, opts)? {
        CertOutcome::Certified(c) => (zero.clone(), c),
        _ => return Ok(None),
    };
    let mut lo = zero;
    let mut hi = hi.clone();
    let tol = rat(1, 1024);
    while hi.is_positive() && (&hi - &lo) > &hi * &tol {
        let mid = round_dyadic(&((&lo + &hi) / int(2)), 16);
        if mid <= lo || mid >= hi {
            break;
        }
        match certify(&build(&mid), bx, opts)? {
            CertOutcome::Certified(c) => {
                lo = mid.clone();
                best = (mid, c);
            }
            _ => hi = mid,
        }
    }
    Ok(Some(best))
}

fn round_dyadic(x: &Rational, bits: i32) -> Rational {
    let scale = Rational::from_integer(num_bigint::BigInt::from(1) << bits as usize);
    (x * &scale).floor() / scale
}

/// `r = (1 − q)·U + (1 − ε²)·Y` with `U = 9(4 − q)(q² − 7q + 16)`.
pub fn r_decomposition() -> (RatPoly, RatPoly) {
    let u = rp("9*(4 - q)*(q^2 - 7*q + 16)");
    let y = rp(
        "-eps^2*q^4 + 12*eps^2*q^3 - 51*eps^2*q^2 + 108*eps^2*q - 144*eps^2 \
         + 7*q^4 - 84*q^3 + 369*q^2 - 756*q + 720",
    );
    (u, y)
}

#[derive(Clone, Debug)]
pub struct ResultantReport {
    /// `r` in `(q, ε)`, `q = p²`.
    pub r: RatPoly,
    pub identity_holds: bool,
    pub u_positive: CertOutcome,
    /// `Y > 179` on the unit square (its minimum 180 is at `(1, 1)`).
    pub y_bound: CertOutcome,
    /// Direct attempt on `r > 0`; expected to stop at the corner `(1, 1)`
    /// where `r` vanishes.
    pub direct: CertOutcome,
}

impl ResultantReport {
    /// `r > 0` on `[0, 1]² ∖ {(1, 1)}`, and `r(1, 1) = 0`.
    pub fn confirmed(&self) -> bool {
        let corner = self.r.eval(&[(Q, int(1)), (EPS, int(1))]).map(|v| v.is_zero()).unwrap_or(false);
        self.identity_holds && self.u_positive.is_certified() && self.y_bound.is_certified() && corner
    }
}

pub fn resultant_positivity(r_p: &RatPoly, opts: &CertifyOptions) -> Result<ResultantReport, CertifyError> {
    let r = even_to_q(r_p).map_err(|e| CertifyError::Variables(e.to_string()))?;
    let (u, y) = r_decomposition();
    let one = RatPoly::constant(int(1));
    let q = RatPoly::var(Q);
    let e = RatPoly::var(EPS);
    let rebuilt = &(&(&one - &q) * &u) + &(&(&one - &(&e * &e)) * &y);
    let identity_holds = (&rebuilt - &r).compact().is_zero();
    let sq = DomainBox::new(&[(Q, int(0), int(1)), (EPS, int(0), int(1))])?;
    let line = DomainBox::new(&[(Q, int(0), int(1))])?;
    let u_positive = certify(&Goal::positive(u, Margin::zero()), &line, opts)?;
    let y_bound = certify(&Goal::positive(y, Margin::constant(int(179))), &sq, opts)?;
    let direct = certify(&Goal::positive(r.clone(), Margin::zero()), &sq, opts)?;
    Ok(ResultantReport { r, identity_holds, u_positive, y_bound, direct })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_is_the_recomputed_r() {
        let r = &cartan_spectrum::Resultants::shared().r;
        let rep = resultant_positivity(r, &CertifyOptions::default()).unwrap();
        assert!(rep.identity_holds);
        assert!(rep.confirmed());
        match &rep.direct {
            CertOutcome::CounterexampleCandidate(cx) => {
                assert_eq!(cx.point, vec![int(1), int(1)]);
                assert!(cx.value.s.is_zero());
            }
            o => panic!("{}", o.label()),
        }
    }
}
