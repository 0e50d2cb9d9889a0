use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coeff, Degree};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients indexed by degree.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly<D> {
    coeffs: Vec<D>,
}

impl<D: Coeff> UPoly<D> {
    pub fn new(mut coeffs: Vec<D>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    /// `c * x^k`.
    pub fn monomial(c: D, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        UPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[D] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<D> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&D> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n as u32 - 1),
        }
    }

    pub fn lc(&self) -> Option<&D> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UPoly::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(Coeff::negated).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (Some(a0), false) = (self.coeffs.first(), other.is_zero()) else {
            return UPoly::zero();
        };
        let mut out = vec![a0.zero_like(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        UPoly::new(out)
    }

    /// Repeated squaring; the zero polynomial stays zero for every exponent.
    pub fn pow(&self, mut exp: u32) -> Self {
        let Some(c) = self.coeffs.first() else {
            return UPoly::zero();
        };
        let mut acc = UPoly::new(vec![c.one_like()]);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale_by(&self, k: &D) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c.times(k)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &D) -> D {
        self.coeffs
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, c| acc.times(x).plus(c))
    }

    /// Division with remainder by a monic divisor: `self = q·d + r` with
    /// `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let lc = d.lc().ok_or(Error::ZeroPolynomial("division"))?;
        if !lc.is_one_elem() {
            return Err(Error::NonMonicDivisor);
        }
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![lc.zero_like(); rem.len() - dn];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dn].clone();
            if q.is_zero_elem() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&q.times(dc));
            }
            quot[k] = q;
        }
        rem.truncate(dn);
        Ok((UPoly::new(quot), UPoly::new(rem)))
    }

    pub fn map_coeffs<E: Coeff>(&self, f: impl Fn(&D) -> E) -> UPoly<E> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UPoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        UPoly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// The polynomial `x - root`.
    pub fn linear(root: &Rational) -> Self {
        UPoly::new(vec![-root, Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    pub fn scale(&self, k: &Rational) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Divides by the leading coefficient; returns `(unit, monic)`.
    pub fn monic(&self) -> Result<(Rational, Self)> {
        let lc = self
            .lc()
            .ok_or(Error::ZeroPolynomial("monic normalization"))?
            .clone();
        Ok((lc.clone(), self.scale(&lc.recip())))
    }

    /// Monic gcd over ℚ.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, bm) = b.monic()?;
            let (_, r) = a.divrem(&bm)?;
            a = bm;
            b = r;
        }
        Ok(a.monic()?.1)
    }

    /// `self = content · primitive` where the primitive part has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn content_primitive(&self) -> Result<(Rational, Self)> {
        let lc = self.lc().ok_or(Error::ZeroPolynomial("content"))?;
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.coeffs.iter().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * (&den / c.denom())))
        });
        let mut content = Rational::new(num, den);
        if lc.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        Ok((content, prim))
    }

    /// Integer coefficients of the primitive part.
    pub fn primitive_integer_coeffs(&self) -> Result<Vec<BigInt>> {
        let (_, prim) = self.content_primitive()?;
        Ok(prim.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// Largest `k` with `(x - root)^k | self`, and the cofactor.
    pub fn deflate(&self, root: &Rational) -> Result<(u32, Self)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("deflation"));
        }
        if !self.eval(root).is_zero() {
            return Err(Error::NotARoot);
        }
        let lin = UPoly::linear(root);
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(&lin)?;
            if !r.is_zero() {
                return Ok((k, cur));
            }
            k += 1;
            cur = q;
        }
    }

    /// `self(x)` with `x` replaced by `value(x)`.
    pub fn compose(&self, value: &Self) -> Self {
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, c| {
            acc.mul(value).add(&UPoly::constant(c.clone()))
        })
    }

    /// Prints with the given variable name, highest degree first.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayIn { poly: self, var }
    }
}

struct DisplayIn<'a> {
    poly: &'a UPoly<Rational>,
    var: &'a str,
}

impl fmt::Display for DisplayIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str(self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<D: Coeff> fmt::Display for UPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero_elem())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
