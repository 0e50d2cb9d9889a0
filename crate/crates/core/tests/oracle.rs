mod common;

use std::collections::BTreeSet;

use common::{integer_quadratic_divisors, quadratic_divisors, small_grid};
use cuboid_core::arith::{int, rat, rat_int};
use cuboid_core::{factor_23, fiber, ObstructionSystem};

#[test]
fn oracle_finds_known_factorizations() {
    let ints = |v: &[i64]| v.iter().map(|&c| int(c)).collect::<Vec<_>>();
    // (y - 1)(y + 1)^4 has quadratic divisors y^2 - 1 and y^2 + 2y + 1.
    let found = integer_quadratic_divisors(&ints(&[-1, -3, -2, 2, 3, 1]));
    assert_eq!(found, BTreeSet::from([(int(0), int(-1)), (int(2), int(1))]));
    // y^3 (y^2 + 6y + 1).
    let found = integer_quadratic_divisors(&ints(&[0, 0, 0, 1, 6, 1]));
    assert_eq!(found, BTreeSet::from([(int(0), int(0)), (int(6), int(1))]));
    // y^5 + y + 1 = (y^2 + y + 1)(y^3 - y^2 + 1).
    let found = integer_quadratic_divisors(&ints(&[1, 1, 0, 0, 0, 1]));
    assert_eq!(found, BTreeSet::from([(int(1), int(1))]));
    assert!(integer_quadratic_divisors(&ints(&[-2, 0, 0, 0, 0, 1])).is_empty());
}

#[test]
fn oracle_on_transcript_fibres() {
    assert!(quadratic_divisors(&rat_int(4)).is_empty());
    assert!(quadratic_divisors(&rat(4, 9)).is_empty());
    assert_eq!(
        quadratic_divisors(&rat_int(-1)),
        BTreeSet::from([(rat_int(2), rat_int(1))])
    );
}

/// The fibre criterion finds a quadratic divisor of P_s exactly when the
/// exhaustive search does, and finds the same ones.
#[test]
fn fibre_criterion_matches_exhaustive_search_on_small_grid() {
    let sys = ObstructionSystem::shared();
    let mut with_factor = Vec::new();
    for s in small_grid() {
        let expected = quadratic_divisors(&s);
        let got: BTreeSet<_> = fiber(sys, &s)
            .all_witnesses()
            .map(|w| (w.a0.clone(), w.b0.clone()))
            .collect();
        assert_eq!(got, expected, "s = {s}");
        assert_eq!(factor_23(sys, &s).is_some(), !expected.is_empty(), "s = {s}");
        if !expected.is_empty() {
            with_factor.push(s);
        }
    }
    assert_eq!(with_factor, vec![rat_int(-1), rat_int(0), rat_int(1)]);
}
