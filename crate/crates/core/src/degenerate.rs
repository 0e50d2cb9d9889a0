//! The degenerate locus `L = C = 0`, where `b = C/L` is undefined.

use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::model::ObstructionSystem;
use crate::poly::{
    rational_roots, rational_roots_by_enumeration, resultant_in, split_rational_roots, MPoly, RootList,
    UPoly, VarSet,
};

/// `gcd_s(L(s, a0), C(s, a0))` at one rational root `a0` of the resultant.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusGcd {
    pub a0: Rational,
    pub gcd: UPoly<Rational>,
    pub roots: RootList,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateReport {
    /// Primitive part of `Res_s(L, C)` in `a`.
    pub resultant: UPoly<Rational>,
    pub resultant_degree: u32,
    pub linear_factors: RootList,
    pub cofactor: UPoly<Rational>,
    pub cofactor_degree: u32,
    /// Decided by exhaustive rational-root-theorem candidates, independently
    /// of the modular route that split off the linear factors.
    pub cofactor_has_rational_roots: bool,
    pub gcds: Vec<LocusGcd>,
    /// `(s, a)` pairs, ascending by `s`.
    pub locus_points: Vec<(Rational, Rational)>,
}

fn restrict(poly: &MPoly, a0: &Rational) -> UPoly<Rational> {
    poly.eval_partial(&[("a", a0.clone())])
        .and_then(|p| p.to_univariate("s"))
        .expect("poly lives in [s, a]")
}

/// `L(s, a0)` as a polynomial in `s`.
pub fn l_at(sys: &ObstructionSystem, a0: &Rational) -> UPoly<Rational> {
    restrict(sys.l(), a0)
}

/// `C(s, a0)` as a polynomial in `s`.
pub fn c_at(sys: &ObstructionSystem, a0: &Rational) -> UPoly<Rational> {
    restrict(sys.c(), a0)
}

/// Rational points of `L = C = 0` lying over `a0`, via the gcd in `s`.
pub fn locus_over(sys: &ObstructionSystem, a0: &Rational) -> Result<LocusGcd> {
    let gcd = l_at(sys, a0).gcd(&c_at(sys, a0))?;
    let roots = if gcd.degree() == 0 {
        RootList::default()
    } else {
        rational_roots(&gcd)?
    };
    Ok(LocusGcd {
        a0: a0.clone(),
        gcd,
        roots,
    })
}

pub fn analyze_degenerate(sys: &ObstructionSystem) -> Result<DegenerateReport> {
    let res = resultant_in(sys.l(), sys.c(), "s")?
        .remap(&VarSet::new(&["a"])?)?
        .to_univariate("a")?;
    let (_, resultant) = res.content_primitive()?;
    let split = split_rational_roots(&resultant)?;
    let cofactor_has_rational_roots = !rational_roots_by_enumeration(&split.cofactor)?.roots.is_empty();
    let mut gcds = Vec::new();
    let mut locus_points = Vec::new();
    for a0 in split.roots.roots() {
        let g = locus_over(sys, a0)?;
        for s0 in g.roots.roots() {
            let pt = [s0.clone(), a0.clone()];
            if !sys.l().eval(&pt).is_zero() || !sys.c().eval(&pt).is_zero() {
                return Err(Error::IdentityFailed(format!(
                    "L = C = 0 fails at (s, a) = ({s0}, {a0})"
                )));
            }
            locus_points.push((s0.clone(), a0.clone()));
        }
        gcds.push(g);
    }
    locus_points.sort();
    Ok(DegenerateReport {
        resultant_degree: resultant.degree().finite().unwrap_or(0),
        cofactor_degree: split.cofactor.degree().finite().unwrap_or(0),
        resultant,
        linear_factors: split.roots,
        cofactor: split.cofactor,
        cofactor_has_rational_roots,
        gcds,
        locus_points,
    })
}

/// `poly = (s - 1)^k1 · (s + 1)^k2 · cofactor`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorShape {
    pub mult_at_one: u32,
    pub mult_at_minus_one: u32,
    pub cofactor: UPoly<Rational>,
    pub cofactor_roots: RootList,
}

impl FactorShape {
    fn of(poly: &UPoly<Rational>) -> Result<FactorShape> {
        let one = Rational::from_integer(1.into());
        let (k1, rest) = deflate_all(poly, &one);
        let (k2, cofactor) = deflate_all(&rest, &-one);
        let cofactor_roots = rational_roots(&cofactor)?;
        Ok(FactorShape {
            mult_at_one: k1,
            mult_at_minus_one: k2,
            cofactor,
            cofactor_roots,
        })
    }

    /// Exactly `(s-1)²(s+1)` times a root-free cofactor of degree `deg`.
    pub fn matches(&self, deg: u32) -> bool {
        self.mult_at_one == 2
            && self.mult_at_minus_one == 1
            && self.cofactor.degree() == deg
            && self.cofactor_roots.is_empty()
    }
}

fn deflate_all(poly: &UPoly<Rational>, root: &Rational) -> (u32, UPoly<Rational>) {
    poly.deflate(root).unwrap_or((0, poly.clone()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorPattern {
    pub l: FactorShape,
    pub c: FactorShape,
}

impl FactorPattern {
    pub fn passed(&self) -> bool {
        self.l.matches(3) && self.c.matches(4)
    }
}

/// Shapes of `L(s, 2)` and `C(s, 2)` at the rational-root level.
pub fn factor_pattern_check(sys: &ObstructionSystem) -> Result<FactorPattern> {
    let two = Rational::from_integer(2.into());
    Ok(FactorPattern {
        l: FactorShape::of(&l_at(sys, &two))?,
        c: FactorShape::of(&c_at(sys, &two))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn locus_matches_classification() {
        let r = analyze_degenerate(ObstructionSystem::shared()).unwrap();
        assert_eq!(r.resultant_degree, 27);
        assert_eq!(r.linear_factors.to_string(), "[ <2, 6> ]");
        assert_eq!(r.cofactor_degree, 21);
        assert!(!r.cofactor_has_rational_roots);
        let (_, monic) = r.cofactor.monic().unwrap();
        assert_eq!(monic.coeff(1), Some(&rat(179891901, 262144)));
        assert_eq!(monic.coeff(0), Some(&rat(2099601, 262144)));
        assert_eq!(r.gcds[0].gcd, UPoly::from_ints(&[1, -1, -1, 1]));
        assert_eq!(r.gcds[0].roots.to_string(), "[ <-1, 1>, <1, 2> ]");
        assert_eq!(
            r.locus_points,
            vec![(rat_int(-1), rat_int(2)), (rat_int(1), rat_int(2))]
        );
    }

    #[test]
    fn factor_shapes_at_two() {
        let sys = ObstructionSystem::shared();
        let p = factor_pattern_check(sys).unwrap();
        assert!(p.passed());
        assert_eq!(
            p.l.cofactor.monic().unwrap(),
            (rat_int(-2), UPoly::from_ints(&[18, -14, -13, 1]))
        );
        assert_eq!(
            p.c.cofactor.monic().unwrap().1,
            UPoly::new(vec![rat_int(-7), rat_int(9), rat(15, 4), rat(-19, 4), rat_int(1)])
        );
    }
}
