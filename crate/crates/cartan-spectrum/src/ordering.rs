//! The ordered spectrum `λ₁ ≥ … ≥ λ₅` at normal form, with the factor each
//! eigenvalue comes from, and the parameter values where branches meet.

use crate::charpoly::{Branch, NormalFormAlgebra, Resultants, EPS, P};
use crate::hessian::hessian_f64;
use crate::SpectrumError;
use cartan_exact::rational::{self, exact_sqrt, int, sqrt_enclosure};
use cartan_exact::univar::RootInterval;
use cartan_exact::{Interval, QPoly, RatPoly, Rational};
use cartan_geometry::{CartanCubic, Vec5};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// `a + b·√d` with rational `a, b` and `d ≥ 0`.
#[derive(Clone, Debug)]
pub struct QSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl QSurd {
    pub fn rational(a: Rational) -> Self {
        QSurd { a, b: Rational::zero(), d: Rational::zero() }
    }

    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        let mut s = QSurd { a, b, d };
        s.fold_square();
        s
    }

    fn fold_square(&mut self) {
        if self.b.is_zero() {
            self.d = Rational::zero();
            return;
        }
        if let Some(r) = exact_sqrt(&self.d) {
            self.a = &self.a + &self.b * r;
            self.b = Rational::zero();
            self.d = Rational::zero();
        }
    }

    pub fn is_valid(&self) -> bool {
        !self.d.is_negative()
    }

    pub fn neg(&self) -> Self {
        QSurd { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * rational::to_f64(&self.d).sqrt()
    }

    /// Enclosure using a `bits`-precise square root.
    pub fn enclose(&self, bits: u32) -> Interval {
        if self.b.is_zero() {
            return Interval::point(self.a.clone());
        }
        let (lo, hi) = sqrt_enclosure(&self.d, bits);
        Interval::point(self.a.clone()).add(&Interval::new(lo, hi).scale(&self.b))
    }

    /// Exact equality, using that `√d₁, √d₂` are linearly dependent over ℚ
    /// exactly when `d₁d₂` is a rational square.
    pub fn exact_eq(&self, o: &QSurd) -> bool {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => self.a == o.a,
            (true, false) | (false, true) => false,
            (false, false) => match exact_sqrt(&(&self.d * &o.d)) {
                // √d₂ = (s/d₁)·√d₁
                Some(s) => self.a == o.a && self.b == &o.b * &s / &self.d,
                None => false,
            },
        }
    }

    pub fn exact_cmp(&self, o: &QSurd) -> Ordering {
        if self.exact_eq(o) {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            let x = self.enclose(bits);
            let y = o.enclose(bits);
            if x.hi < y.lo {
                return Ordering::Less;
            }
            if y.hi < x.lo {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrderedSpectrum {
    pub values: [f64; 5],
    pub labels: [Branch; 5],
}

#[derive(Clone, Debug)]
pub struct OrderedSpectrumExact {
    pub values: Vec<QSurd>,
    pub labels: [Branch; 5],
}

impl OrderedSpectrum {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Sorted descending; ties broken by factor index.
pub fn ordered_spectrum(alg: &NormalFormAlgebra, p: f64, eps: f64) -> OrderedSpectrum {
    let mut v: Vec<(f64, Branch)> = Branch::ALL.iter().map(|&b| (alg.branch_f64(b, p, eps), b)).collect();
    v.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.factor_index().cmp(&y.1.factor_index())).then(x.1.cmp(&y.1)));
    OrderedSpectrum { values: std::array::from_fn(|i| v[i].0), labels: std::array::from_fn(|i| v[i].1) }
}

pub fn ordered_spectrum_exact(
    alg: &NormalFormAlgebra,
    p: &Rational,
    eps: &Rational,
) -> Result<OrderedSpectrumExact, SpectrumError> {
    let mut v: Vec<(QSurd, Branch)> = Vec::new();
    for &b in &Branch::ALL {
        let s = alg.branch_exact(b, p, eps);
        if !s.is_valid() {
            return Err(SpectrumError::NegativeDiscriminant { branch: b.name(), p: rational::fmt_rational(p) });
        }
        v.push((s, b));
    }
    v.sort_by(|x, y| y.0.exact_cmp(&x.0).then(x.1.factor_index().cmp(&y.1.factor_index())).then(x.1.cmp(&y.1)));
    Ok(OrderedSpectrumExact {
        labels: std::array::from_fn(|i| v[i].1),
        values: v.into_iter().map(|x| x.0).collect(),
    })
}

/// `max |λᵢ(closed form) − λᵢ(Jacobi)|` at `(p, 0, √(1−p²), 0, 0)`.
pub fn cross_validate(p5: &CartanCubic, alg: &NormalFormAlgebra, p: f64, eps: f64) -> Result<f64, SpectrumError> {
    let x = Vec5::new(p, 0.0, (1.0 - p * p).max(0.0).sqrt(), 0.0, 0.0);
    let h = hessian_f64(p5, &x, 1.0 - eps)?;
    let num = h.eigenvalues();
    let closed = ordered_spectrum(alg, p, eps);
    Ok(num.iter().zip(&closed.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// `λᵢ(−p) = −λ₆₋ᵢ(p)` for all `i`, decided exactly.
pub fn oddness_holds(alg: &NormalFormAlgebra, p: &Rational, eps: &Rational) -> Result<bool, SpectrumError> {
    let a = ordered_spectrum_exact(alg, p, eps)?;
    let b = ordered_spectrum_exact(alg, &-p.clone(), eps)?;
    Ok((0..5).all(|i| b.values[i].exact_eq(&a.values[4 - i].neg())))
}

/// `p₀⁴ = 3ε²/(4 − ε²)`.
pub fn p0_fourth(eps: &Rational) -> Rational {
    int(3) * eps * eps / (int(4) - eps * eps)
}

pub fn p0_f64(eps: f64) -> f64 {
    (3.0 * eps * eps / (4.0 - eps * eps)).powf(0.25)
}

#[derive(Clone, Debug)]
pub struct Crossing {
    /// The two branches that meet, one from each factor.
    pub pair: (Branch, Branch),
    pub root: RootInterval,
    pub p_approx: f64,
    /// Whether the isolating interval contains `p₀` (for `p ≥ 0`) or `−p₀`.
    pub contains_p0: bool,
}

fn specialize_eps(f: &RatPoly, eps: &Rational) -> Result<QPoly, SpectrumError> {
    let g = f.specialize(EPS, eps).compact();
    QPoly::from_poly(&g, P).ok_or_else(|| SpectrumError::Structure("resultant is not univariate in p".into()))
}

fn contains_signed_p0(root: &RootInterval, eps: &Rational) -> bool {
    let p04 = p0_fourth(eps);
    let (lo, hi) = if root.lo.is_negative() || (root.lo.is_zero() && root.hi.is_negative()) {
        (-root.hi.clone(), -root.lo.clone())
    } else {
        (root.lo.clone(), root.hi.clone())
    };
    if lo.is_negative() {
        return false;
    }
    let pow4 = |x: &Rational| {
        let y = x * x;
        &y * &y
    };
    pow4(&lo) <= p04 && p04 <= pow4(&hi)
}

/// Real roots in `[−1, 1]` of the pairwise resultants at fixed `ε`, each
/// attributed to the pair of branches that coincide there.
pub fn branch_crossings(alg: &NormalFormAlgebra, res: &Resultants, eps: &Rational) -> Result<Vec<Crossing>, SpectrumError> {
    let width = rational::pow2(-40);
    let (lo, hi) = (int(-1), int(1));
    let ef = rational::to_f64(eps);
    let mut out = Vec::new();
    for (f, fa, fb) in [(&res.la, 0usize, 1usize), (&res.lb, 0, 2), (&res.ab, 1, 2)] {
        let poly = specialize_eps(f, eps)?;
        for root in poly.isolate_roots(&lo, &hi, &width) {
            let pm = match &root.exact {
                Some(x) => rational::to_f64(x),
                None => rational::to_f64(&((&root.lo + &root.hi) / int(2))),
            };
            let mut best = (f64::INFINITY, Branch::L, Branch::L);
            for &x in Branch::ALL.iter().filter(|b| b.factor_index() == fa) {
                for &y in Branch::ALL.iter().filter(|b| b.factor_index() == fb) {
                    let d = (alg.branch_f64(x, pm, ef) - alg.branch_f64(y, pm, ef)).abs();
                    if d < best.0 {
                        best = (d, x, y);
                    }
                }
            }
            let contains_p0 = contains_signed_p0(&root, eps);
            out.push(Crossing { pair: (best.1, best.2), root, p_approx: pm, contains_p0 });
        }
    }
    out.sort_by(|a, b| a.p_approx.total_cmp(&b.p_approx));
    Ok(out)
}

/// Crossings strictly inside `]−1, 1[`.
pub fn interior(crossings: &[Crossing]) -> Vec<&Crossing> {
    crossings
        .iter()
        .filter(|c| {
            let one = int(1);
            c.root.hi < one && c.root.lo > -one.clone() || c.root.exact.as_ref().is_some_and(|x| x.abs() < one)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::rational::rat;
    use cartan_geometry::build_p5;

    fn alg() -> &'static NormalFormAlgebra {
        NormalFormAlgebra::shared()
    }

    #[test]
    fn surd_equality_and_order() {
        let x = QSurd::new(int(1), int(1), int(8)); // 1 + 2√2
        let y = QSurd::new(int(1), int(2), int(2));
        assert!(x.exact_eq(&y));
        assert_eq!(x.exact_cmp(&y), Ordering::Equal);
        let z = QSurd::new(int(1), int(1), int(3));
        assert!(!x.exact_eq(&z));
        assert_eq!(z.exact_cmp(&x), Ordering::Less);
        assert!(QSurd::new(int(2), int(3), int(4)).exact_eq(&QSurd::rational(int(8))));
    }

    #[test]
    fn spectrum_at_p1_delta0() {
        let s = ordered_spectrum_exact(alg(), &int(1), &int(1)).unwrap();
        let want = [2, 2, 2, -7, -7];
        for (v, w) in s.values.iter().zip(want) {
            assert!(v.exact_eq(&QSurd::rational(int(w))));
        }
        let f = ordered_spectrum(alg(), 1.0, 1.0);
        assert!((f.values[0] - 2.0).abs() < 1e-12 && (f.values[4] + 7.0).abs() < 1e-12);
    }

    #[test]
    fn top_and_bottom_are_b_branches() {
        // at p = ±1 the B branches tie with L and the tie-break puts L first
        for k in -7..=7 {
            let s = ordered_spectrum(alg(), k as f64 / 8.0, 0.4);
            assert_eq!(s.labels[0], Branch::BPlus);
            assert_eq!(s.labels[4], Branch::BMinus);
        }
    }

    #[test]
    fn zero_p_is_symmetric() {
        let s = ordered_spectrum_exact(alg(), &int(0), &rat(3, 5)).unwrap();
        for i in 0..5 {
            assert!(s.values[i].exact_eq(&s.values[4 - i].neg()));
        }
    }

    #[test]
    fn oddness_on_rationals() {
        for (p, e) in [(rat(1, 3), rat(1, 2)), (rat(-5, 7), rat(9, 10)), (int(1), rat(1, 20))] {
            assert!(oddness_holds(alg(), &p, &e).unwrap());
        }
    }

    #[test]
    fn jacobi_agrees_with_closed_forms() {
        let p5 = build_p5();
        for k in -16..=16 {
            let err = cross_validate(&p5, alg(), k as f64 / 16.0, 0.3).unwrap();
            assert!(err < 1e-10, "p={k}/16: {err}");
        }
    }

    #[test]
    fn delta_zero_crossing_at_endpoint() {
        let c = branch_crossings(alg(), Resultants::shared(), &int(1)).unwrap();
        assert!(interior(&c).is_empty());
        let at_one: Vec<_> = c.iter().filter(|x| x.root.exact == Some(int(1))).collect();
        assert!(at_one.iter().any(|x| x.pair == (Branch::L, Branch::APlus) && x.contains_p0));
    }

    #[test]
    fn half_delta_crossing_encloses_p0() {
        let c = branch_crossings(alg(), Resultants::shared(), &rat(1, 2)).unwrap();
        let inner = interior(&c);
        assert_eq!(inner.len(), 2);
        assert!(inner.iter().all(|x| x.contains_p0 && x.pair.0 == Branch::L && x.pair.1.factor_index() == 1));
        let pos = inner.iter().find(|x| x.p_approx > 0.0).unwrap();
        assert_eq!(pos.pair.1, Branch::APlus);
        assert!((pos.p_approx - 5f64.powf(-0.25)).abs() < 1e-9);
    }
}
