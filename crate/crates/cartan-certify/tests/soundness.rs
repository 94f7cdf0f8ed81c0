use cartan_certify::*;
use cartan_exact::exec::Mode;
use cartan_exact::rational::{int, rat};
use cartan_exact::{RatPoly, Rational};
use proptest::prelude::*;

fn bx2() -> DomainBox {
    DomainBox::new(&[("x", int(-1), int(1)), ("y", rat(-1, 2), int(1))]).unwrap()
}

fn lin(a: i64, b: i64, c: i64) -> RatPoly {
    let x = RatPoly::var("x").scale(&rat(a, 4));
    let y = RatPoly::var("y").scale(&rat(b, 4));
    &(&x + &y) + &RatPoly::constant(rat(c, 4))
}

fn sos(coefs: &[(i64, i64, i64)]) -> RatPoly {
    coefs.iter().fold(RatPoly::zero(), |acc, &(a, b, c)| {
        let l = lin(a, b, c);
        &acc + &(&l * &l)
    })
}

fn opts(depth: usize) -> CertifyOptions {
    CertifyOptions { depth_limit: depth, leaf_budget: 20_000, ..Default::default() }
}

fn value(f: &RatPoly, p: &[Rational]) -> Rational {
    f.eval(&[("x", p[0].clone()), ("y", p[1].clone())]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    // sum of squares plus a positive constant is > the constant/2 everywhere
    #[test]
    fn positive_polynomials_are_never_refuted(
        terms in prop::collection::vec((-8i64..=8, -8i64..=8, -8i64..=8), 1..=3),
        c in 1i64..=16,
    ) {
        let f = &sos(&terms) + &RatPoly::constant(rat(c, 64));
        let margin = Margin::constant(rat(c, 128));
        let out = certify_positive(&f, &bx2(), &margin, &opts(14)).unwrap();
        prop_assert!(!matches!(out, CertOutcome::CounterexampleCandidate(_)));
        if let CertOutcome::Certified(cert) = &out {
            prop_assert!(verify_certificate(cert, &Goal::positive(f.clone(), margin)).unwrap());
        }
    }

    // a planted zero inside the box: (x − r)² + (y − s)² − δ is negative
    // at (r, s), so certifying it positive would be false
    #[test]
    fn planted_negative_values_are_never_certified(
        r in -7i64..=7, s in -3i64..=7, extra in prop::collection::vec((-8i64..=8, -8i64..=8, -8i64..=8), 0..=2),
        delta in 1i64..=8,
    ) {
        let x = &RatPoly::var("x") - &RatPoly::constant(rat(r, 8));
        let y = &RatPoly::var("y") - &RatPoly::constant(rat(s, 8));
        let f = &(&(&(&x * &x) + &(&y * &y)) * &(&sos(&extra) + &RatPoly::constant(int(1)))) - &RatPoly::constant(rat(delta, 1024));
        let out = certify_positive(&f, &bx2(), &Margin::zero(), &opts(14)).unwrap();
        prop_assert!(!out.is_certified());
        if let CertOutcome::CounterexampleCandidate(cx) = out {
            prop_assert!(value(&f, &cx.point) <= Rational::from_integer(0.into()));
            prop_assert_eq!(cx.value.s, value(&f, &cx.point));
        }
    }

    #[test]
    fn deeper_limits_keep_certificates(terms in prop::collection::vec((-8i64..=8, -8i64..=8, -8i64..=8), 1..=2), c in 1i64..=8) {
        let f = &sos(&terms) + &RatPoly::constant(rat(c, 32));
        let a = certify_positive(&f, &bx2(), &Margin::zero(), &opts(8)).unwrap();
        if let CertOutcome::Certified(ca) = a {
            let b = certify_positive(&f, &bx2(), &Margin::zero(), &opts(16)).unwrap();
            prop_assert_eq!(Some(&ca), b.certificate());
        }
    }

    #[test]
    fn certificates_are_deterministic(terms in prop::collection::vec((-8i64..=8, -8i64..=8, -8i64..=8), 1..=2), c in 1i64..=8) {
        let f = &sos(&terms) + &RatPoly::constant(rat(c, 32));
        let mut o = opts(16);
        o.mode = Mode::Sequential;
        let a = certify_positive(&f, &bx2(), &Margin::zero(), &o).unwrap();
        o.mode = Mode::Parallel;
        o.frontier = 8;
        let b = certify_positive(&f, &bx2(), &Margin::zero(), &o).unwrap();
        let c2 = certify_positive(&f, &bx2(), &Margin::zero(), &o).unwrap();
        // the tree does not depend on mode or frontier width
        prop_assert_eq!(a.certificate(), b.certificate());
        prop_assert_eq!(b.certificate(), c2.certificate());
    }
}
