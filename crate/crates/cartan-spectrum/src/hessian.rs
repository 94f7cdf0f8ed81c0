//! `D²w` for `w = P₅·|x|^c`, `c = −(1+δ)`.
//!
//! With `r = |x|`, `D²w = r^{c−4}·H̃` where
//! `H̃ = r⁴D²P + c·r²(∇P xᵀ + x ∇Pᵀ) + c·P(r²I + (c−2)xxᵀ)`
//! is a polynomial matrix in `(x, δ)`.

use crate::symmat::{poly_trace, SymMatrix5};
use crate::SpectrumError;
use cartan_exact::rational::{self, int};
use cartan_exact::{QuadExt, Rational, SparsePoly};
use cartan_geometry::{CartanCubic, Vec5, VARS};
use num_traits::{One, Zero};

pub const DELTA: &str = "delta";

fn q(r: Rational) -> SparsePoly {
    SparsePoly::constant(QuadExt::rational(r))
}

/// `H̃` as a polynomial matrix in `(x1, x2, z1, z2, z3, delta)`.
pub fn symbolic_tilde(p5: &CartanCubic) -> Result<SymMatrix5<SparsePoly>, SpectrumError> {
    let p = p5.poly();
    let x: Vec<SparsePoly> = VARS.iter().map(|v| SparsePoly::var(v)).collect();
    let grad: Vec<SparsePoly> = VARS.iter().map(|v| p.derivative(v)).collect::<Result<_, _>>()?;
    let r2 = x.iter().fold(SparsePoly::zero(), |acc, xi| &acc + &(xi * xi));
    let r4 = &r2 * &r2;
    let c = &q(int(-1)) - &SparsePoly::var(DELTA);
    let cm2 = &c - &q(int(2));
    let cp = &c * p;
    let mut err = None;
    let m = SymMatrix5::from_fn(|i, j| {
        let hij = match grad[i].derivative(VARS[j]) {
            Ok(h) => h,
            Err(e) => {
                err = Some(e);
                return SparsePoly::zero();
            }
        };
        let mut e = &r4 * &hij;
        let sym = &(&grad[i] * &x[j]) + &(&x[i] * &grad[j]);
        e = &e + &(&(&c * &r2) * &sym);
        let mut inner = &cm2 * &(&x[i] * &x[j]);
        if i == j {
            inner = &inner + &r2;
        }
        &e + &(&cp * &inner)
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(m),
    }
}

/// `trace(H̃) + (1+δ)(8−δ)·P·|x|²`, which vanishes identically for a
/// harmonic cubic in five variables.
pub fn trace_identity_defect(p5: &CartanCubic, tilde: &SymMatrix5<SparsePoly>) -> SparsePoly {
    let d = SparsePoly::var(DELTA);
    let factor = &(&q(int(1)) + &d) * &(&q(int(8)) - &d);
    let r2 = VARS.iter().fold(SparsePoly::zero(), |acc, v| {
        let xv = SparsePoly::var(v);
        &acc + &(&xv * &xv)
    });
    &poly_trace(tilde) + &(&(&factor * p5.poly()) * &r2)
}

/// The derived trace constant `−(1+δ)(n+3−δ)` of `Δ(Q·|x|^{−1−δ})` on the
/// unit sphere for a harmonic cubic `Q` on ℝⁿ.
pub fn trace_constant(n: i64) -> SparsePoly {
    let d = SparsePoly::var(DELTA);
    (&(&q(int(1)) + &d) * &(&q(int(n + 3)) - &d)).neg()
}

/// Exact `H̃(x)` together with `|x|²`; the Hessian itself is
/// `(|x|²)^{−(5+δ)/2}·H̃(x)`.
#[derive(Clone, Debug)]
pub struct ExactHessian {
    pub tilde: SymMatrix5<QuadExt>,
    pub r2: Rational,
    pub delta: Rational,
}

impl ExactHessian {
    /// `D²w(x)` itself, available when `|x| = 1`.
    pub fn on_sphere(&self) -> Option<&SymMatrix5<QuadExt>> {
        self.r2.is_one().then_some(&self.tilde)
    }
}

pub fn hessian_exact(
    tilde: &SymMatrix5<SparsePoly>,
    x: &[Rational; 5],
    delta: &Rational,
) -> Result<ExactHessian, SpectrumError> {
    let r2 = x.iter().fold(Rational::zero(), |acc, v| acc + v * v);
    if r2.is_zero() {
        return Err(SpectrumError::ZeroVector);
    }
    let mut point: Vec<(&str, QuadExt)> = VARS.iter().zip(x).map(|(v, r)| (*v, QuadExt::rational(r.clone()))).collect();
    point.push((DELTA, QuadExt::rational(delta.clone())));
    let tilde = tilde.try_map(|e| e.eval(&point))?;
    Ok(ExactHessian { tilde, r2, delta: delta.clone() })
}

/// Floating-point `D²w(x)`.
pub fn hessian_f64(p5: &CartanCubic, x: &Vec5, delta: f64) -> Result<SymMatrix5<f64>, SpectrumError> {
    let r2 = x.norm_squared();
    if r2 == 0.0 || !r2.is_finite() {
        return Err(SpectrumError::ZeroVector);
    }
    let c = -(1.0 + delta);
    let pv = p5.eval(x);
    let g = p5.gradient(x);
    let h = p5.hessian(x);
    let rc2 = r2.powf((c - 2.0) / 2.0);
    let rc4 = r2.powf((c - 4.0) / 2.0);
    let rc = rc2 * r2;
    Ok(SymMatrix5::from_fn(|i, j| {
        let mut e = rc * h[(i, j)] + c * rc2 * (g[i] * x[j] + x[i] * g[j]) + pv * c * (c - 2.0) * rc4 * x[i] * x[j];
        if i == j {
            e += pv * c * rc2;
        }
        e
    }))
}

/// Rational unit vector `((m²−n²)/(m²+n²), 0, 2mn/(m²+n²), 0, 0)`.
pub fn pythagorean_normal_point(m: i64, n: i64) -> [Rational; 5] {
    let s = m * m + n * n;
    let z = Rational::zero();
    [rational::rat(m * m - n * n, s), z.clone(), rational::rat(2 * m * n, s), z.clone(), z]
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::rational::rat;
    use cartan_geometry::build_p5;
    use std::sync::OnceLock;

    fn tilde() -> &'static SymMatrix5<SparsePoly> {
        static T: OnceLock<SymMatrix5<SparsePoly>> = OnceLock::new();
        T.get_or_init(|| symbolic_tilde(&build_p5()).unwrap())
    }

    fn e1() -> [Rational; 5] {
        std::array::from_fn(|k| int((k == 0) as i64))
    }

    #[test]
    fn hessian_at_e1_is_diagonal() {
        let h = hessian_exact(tilde(), &e1(), &int(0)).unwrap();
        let m = h.on_sphere().unwrap();
        let want = [2, -7, 2, 2, -7];
        for i in 0..5 {
            for j in 0..5 {
                let w = if i == j { int(want[i]) } else { int(0) };
                assert_eq!(*m.get(i, j), QuadExt::rational(w), "({i},{j})");
            }
        }
    }

    #[test]
    fn trace_identity_is_exact() {
        let p5 = build_p5();
        assert!(trace_identity_defect(&p5, tilde()).is_zero());
    }

    #[test]
    fn printed_constant_differs_from_derived() {
        let printed = cartan_exact::expr::parse_poly("delta^2 - 2*delta - 3 - 5").unwrap();
        let diff = &printed - &trace_constant(5);
        assert!(!diff.is_zero());
        assert_eq!(diff, cartan_exact::expr::parse_poly("5*delta").unwrap());
    }

    #[test]
    fn homogeneity_of_tilde() {
        let x = [rat(1, 3), rat(-2, 5), rat(1, 7), rat(3, 4), rat(-1, 2)];
        let x2: [Rational; 5] = std::array::from_fn(|i| &x[i] * int(2));
        for d in [int(0), rat(1, 2), rat(3, 7)] {
            let a = hessian_exact(tilde(), &x, &d).unwrap();
            let b = hessian_exact(tilde(), &x2, &d).unwrap();
            let k = QuadExt::rational(int(32));
            for i in 0..5 {
                for j in i..5 {
                    assert_eq!(*b.tilde.get(i, j), &k * a.tilde.get(i, j));
                }
            }
        }
    }

    #[test]
    fn float_hessian_matches_exact_and_scales() {
        let p5 = build_p5();
        let x = [rat(1, 3), rat(-2, 5), rat(1, 7), rat(3, 4), rat(-1, 2)];
        let xf = Vec5::from_fn(|i, _| rational::to_f64(&x[i]));
        for (d, df) in [(int(0), 0.0), (rat(1, 2), 0.5)] {
            let ex = hessian_exact(tilde(), &x, &d).unwrap();
            let f = hessian_f64(&p5, &xf, df).unwrap();
            let scale = rational::to_f64(&ex.r2).powf(-(5.0 + df) / 2.0);
            for i in 0..5 {
                for j in 0..5 {
                    let want = ex.tilde.get(i, j).to_f64() * scale;
                    assert!((f.get(i, j) - want).abs() < 1e-12 * (1.0 + want.abs()));
                }
            }
            let f2 = hessian_f64(&p5, &(2.0 * xf), df).unwrap();
            let k = 2f64.powf(-df);
            for i in 0..5 {
                for j in 0..5 {
                    assert!((f2.get(i, j) - k * f.get(i, j)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn zero_vector_rejected() {
        let z: [Rational; 5] = std::array::from_fn(|_| int(0));
        assert!(matches!(hessian_exact(tilde(), &z, &int(0)), Err(SpectrumError::ZeroVector)));
        assert!(hessian_f64(&build_p5(), &Vec5::zeros(), 0.0).is_err());
    }

    #[test]
    fn pythagorean_points_are_unit() {
        for (m, n) in [(2, 1), (3, 2), (7, 4)] {
            let x = pythagorean_normal_point(m, n);
            let r2: Rational = x.iter().map(|v| v * v).sum();
            assert!(r2.is_one());
        }
    }
}
