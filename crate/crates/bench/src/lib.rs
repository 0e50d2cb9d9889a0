//! Shared inputs for the criterion benchmarks.

use cuboid_core::arith::rat;
use cuboid_core::Rational;

/// The fibre parameters printed by the reference transcript.
pub fn transcript_fibers() -> Vec<Rational> {
    vec![rat(1, 1), rat(4, 1), rat(4, 9), rat(2, 1)]
}

/// `count` parameters `p/q` with growing height, useful to time fibre work
/// on increasingly large coefficients.
pub fn ladder(count: i64) -> Vec<Rational> {
    (1..=count).map(|k| rat(2 * k + 1, k + 1)).collect()
}
