use cartan_exact::rational::{self, rat};
use cartan_exact::{RatPoly, Rational};
use cartan_geometry::{build_p5, Vec5};
use cartan_spectrum::charpoly::{B, EPS};
use cartan_spectrum::gfun::GFunction;
use cartan_spectrum::hessian::hessian_f64;
use cartan_spectrum::identity::{fit_at, g_value};
use cartan_spectrum::ordering::oddness_holds;
use cartan_spectrum::symmat::elementary_symmetric;
use cartan_spectrum::{Branch, NormalFormAlgebra};
use num_traits::Zero;
use proptest::prelude::*;

fn alg() -> &'static NormalFormAlgebra {
    NormalFormAlgebra::shared()
}

fn normal_point(p: f64) -> Vec5 {
    Vec5::new(p, 0.0, (1.0 - p * p).max(0.0).sqrt(), 0.0, 0.0)
}

fn e_closed(k: usize, p: f64, eps: f64) -> f64 {
    let b = p * (p * p - 3.0);
    let f = alg().elementary_b(k);
    f.map_coeffs(|x| rational::to_f64(x)).eval_f64_named(&[(B, b), (EPS, eps)]).unwrap()
}

#[test]
fn closed_form_coefficients_match_numeric_spectrum_on_grid() {
    let p5 = build_p5();
    let mut worst = 0.0f64;
    for i in 0..40 {
        let p = -1.0 + 2.0 * i as f64 / 39.0;
        for j in 0..25 {
            let eps = 0.05 + 0.95 * j as f64 / 24.0;
            let h = hessian_f64(&p5, &normal_point(p), 1.0 - eps).unwrap();
            let e = elementary_symmetric(&h.eigenvalues());
            for k in 1..=5 {
                let c = e_closed(k, p, eps);
                worst = worst.max((c - e[k]).abs() / (1.0 + c.abs()));
            }
        }
    }
    assert!(worst <= 1e-10, "worst relative gap {worst:e}");
}

#[test]
fn trace_equals_sum_of_eigenvalues() {
    let p5 = build_p5();
    for i in 0..21 {
        let p = -1.0 + i as f64 / 10.0;
        let h = hessian_f64(&p5, &normal_point(p), 0.3).unwrap();
        let s: f64 = h.eigenvalues().iter().sum();
        assert!((h.trace_f64() - s).abs() < 1e-10);
    }
}

#[test]
fn partials_match_finite_differences_at_p1_eps1() {
    let gf = GFunction::shared();
    let (p, eps, h) = (1.0, 1.0, 1e-6);
    let c = gf.c_f64(eps);
    let lam: Vec<f64> = Branch::ALL.iter().map(|&b| alg().branch_f64(b, p, eps)).collect();
    for (i, &br) in Branch::ALL.iter().enumerate() {
        let g_at = |dx: f64| {
            let mut l = [0.0; 5];
            for (k, v) in lam.iter().enumerate() {
                l[k] = *v + if k == i { dx } else { 0.0 };
            }
            g_value(c, &elementary_symmetric(&l))
        };
        let fd = (g_at(h) - g_at(-h)) / (2.0 * h);
        let exact = gf.partial_f64(br, p, eps);
        assert!((fd - exact).abs() <= 1e-4 * exact.abs(), "{}: fd {fd} vs {exact}", br.name());
    }
}

fn exact_e(k: usize, b: &Rational, eps: &Rational) -> Rational {
    let f: RatPoly = alg().elementary_b(k).specialize(B, b).specialize(EPS, eps);
    f.compact().constant_term()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectrum_is_odd_in_p(pn in -40i64..=40, en in 1i64..=40) {
        prop_assert!(oddness_holds(alg(), &rat(pn, 40), &rat(en, 40)).unwrap());
    }

    #[test]
    fn identity_vanishes_exactly_at_rational_points(pn in -30i64..=30, en in 1i64..=30) {
        let p = rat(pn, 30);
        let eps = rat(en, 30);
        let b = &p * (&p * &p - rational::int(3));
        let fit = fit_at(alg(), &eps).unwrap();
        let e: Vec<Rational> = (0..=5).map(|k| exact_e(k, &b, &eps)).collect();
        let e1_3 = &e[1] * &e[1] * &e[1];
        let g = &e[5] - &fit.c5 * &e1_3 * &e[1] * &e[1] - &fit.c3 * &e1_3 * &e[2] - &fit.c1 * &e[1] * &e[4];
        prop_assert!(g.is_zero());
    }

    #[test]
    fn closed_form_tracks_jacobi(p in -1.0f64..=1.0, eps in 0.05f64..=1.0) {
        let p5 = build_p5();
        let h = hessian_f64(&p5, &normal_point(p), 1.0 - eps).unwrap();
        let num = h.eigenvalues();
        let closed = cartan_spectrum::ordered_spectrum(alg(), p, eps);
        for (a, b) in num.iter().zip(&closed.values) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }
}
