use cartan_geometry::group::{invariant_relabellings, Relabelling};
use cartan_geometry::{build_p5, check_invariance, Generator};

#[test]
fn printed_generators_do_not_preserve_the_cubic_as_written() {
    let p5 = build_p5();
    for g in Generator::ALL {
        let v = check_invariance(&p5, &g.printed()).unwrap();
        assert!(!v.pass, "{}", g.name());
        assert!(!v.remainder.is_zero());
    }
}

#[test]
fn swapping_z2_and_z3_repairs_a2_and_a3_but_not_a1() {
    let p5 = build_p5();
    let swap = Relabelling { perm: [0, 1, 2, 4, 3], signs: [1; 5] };
    assert!(check_invariance(&p5, &swap.conjugate(&Generator::A2.printed())).unwrap().pass);
    assert!(check_invariance(&p5, &swap.conjugate(&Generator::A3.printed())).unwrap().pass);
    assert!(!check_invariance(&p5, &swap.conjugate(&Generator::A1.printed())).unwrap().pass);
    let swap_flip = Relabelling { perm: [0, 1, 2, 4, 3], signs: [1, -1, 1, 1, 1] };
    assert!(check_invariance(&p5, &swap_flip.conjugate(&Generator::A1.printed())).unwrap().pass);
}

#[test]
fn no_single_relabelling_serves_all_three() {
    let p5 = build_p5();
    let sets: Vec<Vec<Relabelling>> =
        Generator::ALL.iter().map(|g| invariant_relabellings(&p5, &g.printed()).unwrap()).collect();
    assert!(sets.iter().all(|s| !s.is_empty()));
    let common: Vec<&Relabelling> = sets[0].iter().filter(|r| sets[1].contains(r) && sets[2].contains(r)).collect();
    assert!(common.is_empty());
}
