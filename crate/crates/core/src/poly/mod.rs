//! Polynomial engine: sparse multivariate polynomials over ℚ, dense
//! univariate polynomials over a generic exact coefficient domain, Sylvester
//! resultants, and rational root extraction.

mod mpoly;
mod parse;
mod resultant;
mod roots;
mod upoly;

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::Rational;

pub use mpoly::{MPoly, Monomial, VarSet};
pub use resultant::{bareiss_determinant, resultant, resultant_in, sylvester_matrix};
pub use roots::{
    rational_roots, rational_roots_by_enumeration, rrt_candidates, split_rational_roots, RootExtraction,
    RootList,
};
pub use upoly::UPoly;

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-infinity"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl PartialEq<u32> for Degree {
    fn eq(&self, other: &u32) -> bool {
        *self == Degree::Finite(*other)
    }
}

/// Exact commutative coefficient domain usable inside [`UPoly`].
///
/// Elements are created relative to an existing element (`zero_like`,
/// `one_like`) because some domains, like [`MPoly`], carry context such as
/// their variable set.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn is_one_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / divisor` when the quotient exists in the domain.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
    fn scaled(&self, k: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one_elem(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        (!Zero::is_zero(divisor)).then(|| self / divisor)
    }
    fn scaled(&self, k: &Rational) -> Self {
        self * k
    }
}
