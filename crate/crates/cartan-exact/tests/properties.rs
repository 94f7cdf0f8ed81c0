use cartan_exact::bernstein::{bernstein_bounds, Patch};
use cartan_exact::rational::{int, rat};
use cartan_exact::{Interval, QPoly, QuadExt, RatPoly, Rational, SparsePoly, UniPoly};
use proptest::prelude::*;

fn quad() -> impl Strategy<Value = QuadExt> {
    (-6i64..=6, -3i64..=3, 1i64..=4).prop_map(|(a, b, d)| QuadExt::new(rat(a, d), rat(b, d)))
}

fn ratv() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn sparse2() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(((0u32..=3, 0u32..=3), quad()), 0..6)
        .prop_map(|ts| SparsePoly::from_terms(&["x", "y"], ts.into_iter().map(|((i, j), c)| (vec![i, j], c))))
}

fn rat2() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(((0u32..=3, 0u32..=3), ratv()), 1..6)
        .prop_map(|ts| RatPoly::from_terms(&["x", "y"], ts.into_iter().map(|((i, j), c)| (vec![i, j], c))))
}

fn interval() -> impl Strategy<Value = Interval> {
    (ratv(), 0i64..=16, 1i64..=8).prop_map(|(lo, w, d)| Interval::new(lo.clone(), lo + rat(w, d)))
}

/// A point of `iv` selected by `t ∈ [0, 1]`.
fn at(iv: &Interval, t: &Rational) -> Rational {
    &iv.lo + &(iv.width() * t)
}

fn unit() -> impl Strategy<Value = Rational> {
    (0i64..=12).prop_map(|k| rat(k, 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in sparse2(), g in sparse2(), x in ratv(), y in ratv()) {
        let pt = [x, y];
        let ev = |p: &SparsePoly| p.with_vars(&["x".into(), "y".into()]).unwrap().eval_rational(&pt).unwrap();
        prop_assert_eq!(ev(&(&f * &g)), &ev(&f) * &ev(&g));
        prop_assert_eq!(ev(&(&f + &g)), &ev(&f) + &ev(&g));
        prop_assert_eq!(ev(&(&f - &f)), QuadExt::rational(int(0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn interval_evaluation_is_inclusion_monotone(
        f in rat2(), bx in interval(), by in interval(), s in unit(), t in unit(), u in unit(), v in unit()
    ) {
        let f = f.with_vars(&["x".into(), "y".into()]).unwrap();
        let outer = [bx.clone(), by.clone()];
        let a = at(&bx, &s);
        let b = at(&bx, &t);
        let inner_x = Interval::new(a.clone().min(b.clone()), a.max(b));
        let c = at(&by, &u);
        let inner = [inner_x.clone(), Interval::new(c.clone().min(by.hi.clone()), by.hi.clone())];
        let fo = f.eval_interval(&outer).unwrap();
        let fi = f.eval_interval(&inner).unwrap();
        prop_assert!(fi.is_subset_of(&fo));
        let pt = [at(&inner_x, &v), c];
        prop_assert!(fi.contains(&f.eval_at(&pt).unwrap()));
    }

    #[test]
    fn shifted_form_agrees_pointwise(f in rat2(), cx in ratv(), cy in ratv(), x in ratv(), y in ratv()) {
        let f = f.with_vars(&["x".into(), "y".into()]).unwrap();
        let g = f.shift(&[cx.clone(), cy.clone()]);
        prop_assert_eq!(f.eval_at(&[x.clone(), y.clone()]).unwrap(), g.eval_at(&[x - cx, y - cy]).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn bernstein_bounds_enclose_the_range(f in sparse2(), bx in interval(), by in interval(), s in unit(), t in unit()) {
        let f = f.with_vars(&["x".into(), "y".into()]).unwrap();
        let boxes = [bx.clone(), by.clone()];
        let (lo, hi) = bernstein_bounds(&f, &boxes).unwrap();
        let val = f.eval_rational(&[at(&bx, &s), at(&by, &t)]).unwrap();
        prop_assert!(val.cmp_value(&QuadExt::rational(lo)).is_ge());
        prop_assert!(val.cmp_value(&QuadExt::rational(hi)).is_le());
    }

    #[test]
    fn bernstein_split_refines(f in rat2(), bx in interval(), by in interval(), dim in 0usize..2) {
        let f = f.with_vars(&["x".into(), "y".into()]).unwrap();
        let p = Patch::from_poly(&f, &[bx, by]).unwrap();
        let (l, r) = p.split(dim);
        prop_assert!(l.lower() >= p.lower() && r.lower() >= p.lower());
        prop_assert!(l.upper() <= p.upper() && r.upper() <= p.upper());
    }
}

fn upoly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 2..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// `Res_x(f, g)` specialized at `t` vanishes exactly when the specialized
    /// polynomials share a factor.
    #[test]
    fn resultant_detects_common_factors(f1 in upoly(), g1 in upoly(), a in -3i64..=3, shared in any::<bool>(), t in -4i64..=4) {
        let x = RatPoly::var("x");
        let tt = RatPoly::var("t");
        let build = |c: &[i64]| {
            // leading coefficient fixed at 1 so degrees survive specialization
            let mut p = x.pow(c.len() as u32);
            for (k, &ck) in c.iter().enumerate() {
                p = &p + &(&x.pow(k as u32) * &(&tt + &RatPoly::from_i64(ck)));
            }
            p
        };
        let mut f = build(&f1);
        let mut g = build(&g1);
        if shared {
            let lin = &x - &(&tt + &RatPoly::from_i64(a));
            f = &f * &lin;
            g = &g * &lin;
        }
        let res = UniPoly::from_poly(&f, "x").resultant(&UniPoly::from_poly(&g, "x")).unwrap();
        let res_t = res.specialize("t", &int(t));
        let fs = QPoly::from_poly(&f.specialize("t", &int(t)), "x").unwrap();
        let gs = QPoly::from_poly(&g.specialize("t", &int(t)), "x").unwrap();
        let common = fs.gcd(&gs).degree().unwrap_or(0) > 0;
        prop_assert_eq!(res_t.is_zero(), common);
        if shared {
            prop_assert!(res.is_zero());
        }
    }

    #[test]
    fn sturm_counts_planted_roots(roots in prop::collection::btree_set(-9i64..=9, 1..5)) {
        let mut f = QPoly::constant(int(1));
        for r in &roots {
            f = f.mul(&QPoly::new(vec![rat(-*r, 2), int(1)]));
        }
        prop_assert_eq!(f.count_roots(&int(-10), &int(10)), roots.len());
        let iso = f.isolate_roots(&int(-10), &int(10), &rat(1, 64));
        prop_assert_eq!(iso.len(), roots.len());
    }
}
