//! One fibre `s = s0` of the obstruction system.

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::model::{ps_at, ObstructionSystem};
use crate::poly::{rational_roots, RootList, UPoly};

/// A quadratic divisor `x² + a0·x + b0` of `P_{s0}` with its cubic cofactor.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorWitness {
    pub a0: Rational,
    pub b0: Rational,
    pub cubic: UPoly<Rational>,
}

impl FactorWitness {
    pub fn quadratic(&self) -> UPoly<Rational> {
        UPoly::new(vec![self.b0.clone(), self.a0.clone(), Rational::one()])
    }
}

/// `b0 = C/L` at a root `a0` with `L ≠ 0`, and whether each remainder
/// vanishes there.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedPair {
    pub a0: Rational,
    pub b0: Rational,
    pub r1_ok: bool,
    pub r0_ok: bool,
}

/// A root `a0` with `L(s0, a0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateHit {
    pub a0: Rational,
    pub c_zero: bool,
    /// Rational solutions `b` of `R1(s0, a0, b) = 0` that also satisfy
    /// `R0`, present only when `C(s0, a0) = 0`.
    pub witnesses: Vec<FactorWitness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberResult {
    pub s0: Rational,
    pub roots: RootList,
    pub derived: Vec<DerivedPair>,
    /// Derived pairs passing both remainder checks, with cofactors.
    pub witnesses: Vec<FactorWitness>,
    pub degenerate_hits: Vec<DegenerateHit>,
}

impl FiberResult {
    /// Every quadratic divisor found, non-degenerate ones first.
    pub fn all_witnesses(&self) -> impl Iterator<Item = &FactorWitness> {
        self.witnesses
            .iter()
            .chain(self.degenerate_hits.iter().flat_map(|h| h.witnesses.iter()))
    }
}

/// `F(s0, ·) = unit · monic`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPoly {
    pub unit: Rational,
    pub monic: UPoly<Rational>,
}

struct Point {
    u: Rational,
    v: Rational,
    m: Rational,
    n: Rational,
    s5: Rational,
}

impl Point {
    fn at(sys: &ObstructionSystem, s0: &Rational, a0: &Rational) -> Point {
        let pt = [s0.clone(), a0.clone()];
        Point {
            u: sys.u().eval(&pt),
            v: sys.v().eval(&pt),
            m: sys.m().eval(&pt),
            n: sys.n().eval(&pt),
            s5: s0.pow(5),
        }
    }

    fn r1(&self, b: &Rational) -> Rational {
        b * b + &self.u * b + &self.v
    }

    fn r0(&self, b: &Rational) -> Rational {
        &self.m * b * b + &self.n * b - &self.s5
    }

    fn l(&self) -> Rational {
        &self.n - &self.m * &self.u
    }

    fn c(&self) -> Rational {
        &self.m * &self.v + &self.s5
    }
}

fn witness(ps: &UPoly<Rational>, a0: &Rational, b0: &Rational) -> FactorWitness {
    let quadratic = UPoly::new(vec![b0.clone(), a0.clone(), Rational::one()]);
    let (cubic, rem) = ps.divrem(&quadratic).expect("monic divisor");
    assert!(
        rem.is_zero() && quadratic.mul(&cubic) == *ps,
        "remainder checks passed but x^2 + {a0}*x + {b0} does not divide P_s"
    );
    FactorWitness {
        a0: a0.clone(),
        b0: b0.clone(),
        cubic,
    }
}

/// Analyzes the fibre at `s0`. Roots are processed in ascending order.
pub fn fiber(sys: &ObstructionSystem, s0: &Rational) -> FiberResult {
    let f = sys.fiber_poly(s0);
    let roots = if f.is_zero() {
        RootList::default()
    } else {
        rational_roots(&f).expect("nonzero fibre")
    };
    let ps = ps_at(s0);
    let mut derived = Vec::new();
    let mut witnesses = Vec::new();
    let mut degenerate_hits = Vec::new();
    for a0 in roots.roots() {
        let pt = Point::at(sys, s0, a0);
        let l = pt.l();
        if l.is_zero() {
            let c_zero = pt.c().is_zero();
            let branch = if c_zero {
                let r1 = UPoly::new(vec![pt.v.clone(), pt.u.clone(), Rational::one()]);
                rational_roots(&r1)
                    .expect("monic quadratic")
                    .roots()
                    .filter(|b| pt.r0(b).is_zero())
                    .map(|b| witness(&ps, a0, b))
                    .collect()
            } else {
                Vec::new()
            };
            degenerate_hits.push(DegenerateHit {
                a0: a0.clone(),
                c_zero,
                witnesses: branch,
            });
            continue;
        }
        let b0 = pt.c() / l;
        let pair = DerivedPair {
            a0: a0.clone(),
            r1_ok: pt.r1(&b0).is_zero(),
            r0_ok: pt.r0(&b0).is_zero(),
            b0,
        };
        if pair.r1_ok && pair.r0_ok {
            witnesses.push(witness(&ps, &pair.a0, &pair.b0));
        }
        derived.push(pair);
    }
    FiberResult {
        s0: s0.clone(),
        roots,
        derived,
        witnesses,
        degenerate_hits,
    }
}

pub fn fiber_poly_report(sys: &ObstructionSystem, s0: &Rational) -> Result<FiberPoly> {
    let f = sys.fiber_poly(s0);
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("fibre F(s0, a)"));
    }
    let (unit, monic) = f.monic()?;
    Ok(FiberPoly { unit, monic })
}

/// A `(quadratic, cubic)` factorization of `P_{s0}` over ℚ, if one exists.
pub fn factor_23(sys: &ObstructionSystem, s0: &Rational) -> Option<(UPoly<Rational>, UPoly<Rational>)> {
    fiber(sys, s0)
        .all_witnesses()
        .next()
        .map(|w| (w.quadratic(), w.cubic.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn sys() -> &'static ObstructionSystem {
        ObstructionSystem::shared()
    }

    #[test]
    fn fiber_at_one() {
        let r = fiber(sys(), &rat_int(1));
        assert_eq!(r.roots.to_string(), "[ <0, 4>, <2, 6> ]");
        assert_eq!(
            r.derived,
            vec![DerivedPair {
                a0: rat_int(0),
                b0: rat_int(-1),
                r1_ok: true,
                r0_ok: true
            }]
        );
        assert_eq!(r.degenerate_hits.len(), 1);
        let hit = &r.degenerate_hits[0];
        assert_eq!(hit.a0, rat_int(2));
        assert!(hit.c_zero);
        assert_eq!(hit.witnesses.len(), 1);
        assert_eq!(hit.witnesses[0].b0, rat_int(1));
    }

    #[test]
    fn empty_fibres() {
        for s in [rat_int(4), rat(4, 9), rat_int(2)] {
            let r = fiber(sys(), &s);
            assert!(r.roots.is_empty() && r.witnesses.is_empty() && r.degenerate_hits.is_empty());
        }
    }

    #[test]
    fn monic_fibre_constants() {
        let c0 = |s: Rational| {
            fiber_poly_report(sys(), &s)
                .unwrap()
                .monic
                .coeff(0)
                .unwrap()
                .clone()
        };
        assert_eq!(c0(rat_int(4)), rat_int(369152308224));
        assert_eq!(c0(rat_int(2)), rat_int(9825088));
        assert_eq!(c0(rat(4, 9)), "3719235255680000/617673396283947".parse().unwrap());
        let one = fiber_poly_report(sys(), &rat_int(1)).unwrap();
        assert_eq!(one.unit, rat_int(-1));
        assert_eq!(one.monic.degree(), 10);
    }

    #[test]
    fn factor_23_examples() {
        let (q, c) = factor_23(sys(), &rat_int(1)).unwrap();
        assert_eq!(q, UPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(c, UPoly::from_ints(&[1, 3, 3, 1]));
        assert!(factor_23(sys(), &rat_int(4)).is_none());

        let zero = fiber(sys(), &rat_int(0));
        let pairs: Vec<_> = zero
            .witnesses
            .iter()
            .map(|w| (w.a0.clone(), w.b0.clone()))
            .collect();
        assert_eq!(pairs, vec![(rat_int(0), rat_int(0)), (rat_int(6), rat_int(1))]);
        let (q, c) = factor_23(sys(), &rat_int(0)).unwrap();
        assert_eq!(q, UPoly::from_ints(&[0, 0, 1]));
        assert_eq!(c, UPoly::from_ints(&[0, 1, 6, 1]));
    }

    #[test]
    fn degenerate_branch_at_minus_one() {
        let (q, c) = factor_23(sys(), &rat_int(-1)).unwrap();
        assert_eq!(q, UPoly::from_ints(&[1, 2, 1]));
        assert_eq!(c, UPoly::from_ints(&[1, 3, 3, 1]));
    }
}
