mod common;

use common::props::*;
use common::{cuboid_params, monic, mpoly_xy, nonzero_rational, q, small_rational, upoly};
use cuboid_core::arith::{int, int_gcd, rat_height, rat_normalize};
use cuboid_core::search::{affine_search, SearchConfig};
use cuboid_core::{MPoly, ObstructionSystem, UPoly};
use num_traits::Signed;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_reconstruction(f in upoly(8), g in monic(1, 4)) {
        division_reconstructs(&f, &g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn resultant_two_methods(f in upoly(6), g in upoly(6)) {
        resultants_agree(&f, &g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn resultant_commutes_with_specialization(f in mpoly_xy(), g in mpoly_xy(), y0 in small_rational()) {
        prop_assume!(f.degree_in("x").unwrap().finite().unwrap_or(0) > 0);
        prop_assume!(g.degree_in("x").unwrap().finite().unwrap_or(0) > 0);
        resultant_specializes(&f, &g, &y0).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn planted_roots_are_found(
        planted in prop::collection::vec((small_rational(), 1u32..=3), 0..5),
        tail in prop::sample::select(vec![
            UPoly::from_ints(&[1]),
            UPoly::from_ints(&[1, 0, 1]),
            UPoly::from_ints(&[-2, 0, 1]),
            UPoly::from_ints(&[3, 1, 0, 1]),
        ]),
        scale in nonzero_rational(),
    ) {
        roots_recovered(&planted, &tail, &scale).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn gcd_keeps_common_factor(f in upoly(4), g in upoly(4), h in monic(0, 3)) {
        gcd_contains_common_factor(&f, &g, &h).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn homogenize_then_dehomogenize(f in mpoly_xy(), extra in 0u32..3) {
        homogenize_round_trips(&f, extra).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn sums_and_products_are_canonical(f in mpoly_xy(), g in mpoly_xy(), h in mpoly_xy()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        let text = f.to_string();
        prop_assert_eq!(MPoly::parse(f.vars(), &text).unwrap(), f);
    }

    #[test]
    fn rationals_are_normalized(n in -500i64..500, d in (1i64..1000, any::<bool>())) {
        let d = if d.1 { d.0 } else { -d.0 };
        let r = rat_normalize(int(n), int(d)).unwrap();
        prop_assert!(r.denom().is_positive());
        prop_assert_eq!(int_gcd(r.numer(), r.denom()), int(1));
        prop_assert_eq!(r.clone() * q(d), q(n));
        prop_assert!(rat_height(&r).value() >= &int(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn qpq_weighted_homogeneity((p, q_) in cuboid_params(), t in small_rational(), l in nonzero_rational()) {
        weighted_homogeneous(p, q_, &t, &l).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn worker_count_does_not_change_the_search() {
    let sys = ObstructionSystem::shared();
    let base = affine_search(sys, &SearchConfig::new(int(24), 1).unwrap());
    for w in [2, 3, 5, 8, 64] {
        assert_eq!(
            affine_search(sys, &SearchConfig::new(int(24), w).unwrap()),
            base,
            "workers = {w}"
        );
    }
}

#[test]
fn larger_bounds_only_add_points() {
    let sys = ObstructionSystem::shared();
    let mut prev = affine_search(sys, &SearchConfig::new(int(1), 1).unwrap()).pairs;
    for b in [2, 3, 5, 8, 13] {
        let next = affine_search(sys, &SearchConfig::new(int(b), 2).unwrap()).pairs;
        assert!(prev.iter().all(|p| next.contains(p)), "bound {b} lost a point");
        prev = next;
    }
}

#[test]
fn every_fibre_root_is_reported() {
    use cuboid_core::poly::rational_roots_by_enumeration;
    let sys = ObstructionSystem::shared();
    let pairs = affine_search(sys, &SearchConfig::new(int(3), 1).unwrap()).pairs;
    let grid = (1..=3i64).flat_map(|d| (-3..=3i64).map(move |n| cuboid_core::arith::rat(n, d)));
    for s in grid.collect::<std::collections::BTreeSet<_>>() {
        let f = sys.fiber_poly(&s);
        let expected: Vec<_> = rational_roots_by_enumeration(&f)
            .unwrap()
            .roots
            .roots()
            .cloned()
            .collect();
        let mut got: Vec<_> = pairs
            .iter()
            .filter(|(x, _)| *x == s)
            .map(|(_, a)| a.clone())
            .collect();
        got.sort();
        assert_eq!(got, expected, "s = {s}");
    }
}

#[test]
fn resultant_agreement_on_fixed_instances() {
    // Twenty deterministic pairs, on top of the random ones.
    for k in 1..=20i64 {
        let f = UPoly::new(vec![q(k), q(-3), q(k % 4), q(1), q(2 - k)]);
        let g = UPoly::new(vec![q(1 - k), q(k % 3), q(5)]);
        resultants_agree(&f, &g).unwrap();
    }
}
