use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Coeff, Degree, UPoly};
use crate::arith::{parse_rational, rat_to_fraction, Rational};
use crate::error::{Error, Result};

/// Ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<VarSet>> {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || names[..i].contains(n) {
                return Err(Error::Parse {
                    what: "variable list",
                    input: names.join(","),
                });
            }
        }
        Ok(Arc::new(VarSet { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

/// Exponent vector, one entry per variable of the owning [`VarSet`].
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms live in a map keyed by graded-lex monomials, and zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        MPoly::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        let i = vars.index(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(MPoly::from_terms(vars, [(e, Rational::one())]))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = MPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Parses an expression such as `-3*a^2 + (12 - 4*s^2)*a - 1/2`.
    pub fn parse(vars: &Arc<VarSet>, text: &str) -> Result<Self> {
        super::parse::parse_mpoly(vars, text)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_vars(&self, other: &MPoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = MPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.vars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        self.check_vars(divisor).ok()?;
        let (dm, dc) = divisor.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn degree_in(&self, var: &str) -> Result<Degree> {
        let i = self.vars.index(var)?;
        Ok(self
            .terms
            .keys()
            .map(|m| m.0[i])
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite))
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Full evaluation at a point given in variable order.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let powers = PowerTable::new(point, self.terms.keys());
        self.terms
            .iter()
            .map(|(m, c)| c * powers.monomial(m))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Substitutes the bound variables; the result lives over the remaining
    /// variables (in their original order).
    pub fn eval_partial(&self, bindings: &[(&str, Rational)]) -> Result<MPoly> {
        let mut bound: Vec<Option<Rational>> = vec![None; self.vars.len()];
        for (name, value) in bindings {
            bound[self.vars.index(name)?] = Some(value.clone());
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| bound[i].is_none()).collect();
        let names: Vec<&str> = keep.iter().map(|&i| self.vars.names[i].as_str()).collect();
        let target = VarSet::new(&names)?;

        let mut max_exp = vec![0u32; self.vars.len()];
        for m in self.terms.keys() {
            for (slot, e) in max_exp.iter_mut().zip(&m.0) {
                *slot = (*slot).max(*e);
            }
        }
        let powers: Vec<Vec<Rational>> = bound
            .iter()
            .zip(&max_exp)
            .map(|(b, &top)| match b {
                Some(v) => successive_powers(v, top),
                None => Vec::new(),
            })
            .collect();

        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if bound[i].is_some() {
                    coeff *= &powers[i][*e as usize];
                }
            }
            let exps = keep.iter().map(|&i| m.0[i]).collect();
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    /// Views the polynomial as univariate in `var` with coefficients in the
    /// same ring (where `var` no longer occurs).
    pub fn to_upoly(&self, var: &str) -> Result<UPoly<MPoly>> {
        let i = self.vars.index(var)?;
        let deg = self.degree_in(var)?;
        let Some(deg) = deg.finite() else {
            return Ok(UPoly::zero());
        };
        let mut coeffs = vec![MPoly::zero(&self.vars); deg as usize + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::take(&mut e[i]);
            coeffs[k as usize].add_term(Monomial(e), c.clone());
        }
        Ok(UPoly::new(coeffs))
    }

    /// Inverse of [`MPoly::to_upoly`].
    pub fn from_upoly(p: &UPoly<MPoly>, vars: &Arc<VarSet>, var: &str) -> Result<MPoly> {
        let i = vars.index(var)?;
        let mut out = MPoly::zero(vars);
        for (k, coeff) in p.coeffs().iter().enumerate() {
            coeff.check_vars(&out)?;
            for (m, c) in &coeff.terms {
                if m.0[i] != 0 {
                    return Err(Error::NotUnivariate(var.to_string()));
                }
                let mut e = m.0.clone();
                e[i] = k as u32;
                out.add_term(Monomial(e), c.clone());
            }
        }
        Ok(out)
    }

    /// Rational univariate polynomial in `var`; every other variable must be
    /// absent.
    pub fn to_univariate(&self, var: &str) -> Result<UPoly<Rational>> {
        let i = self.vars.index(var)?;
        let deg = self.degree_in(var)?.finite().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, e)| j != i && *e != 0) {
                return Err(Error::NotUnivariate(var.to_string()));
            }
            coeffs[m.0[i] as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UPoly<Rational>, vars: &Arc<VarSet>, var: &str) -> Result<MPoly> {
        let i = vars.index(var)?;
        Ok(MPoly::from_terms(
            vars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; vars.len()];
                e[i] = k as u32;
                (e, c.clone())
            }),
        ))
    }

    /// Moves the polynomial into another variable set, matching variables by
    /// name. Variables missing from `target` must not occur.
    pub fn remap(&self, target: &Arc<VarSet>) -> Result<MPoly> {
        let map: Vec<Option<usize>> = self.vars.names.iter().map(|n| target.index(n).ok()).collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (j, &k) in m.0.iter().enumerate() {
                match map[j] {
                    Some(t) => e[t] = k,
                    None if k == 0 => {}
                    None => return Err(Error::UnknownVariable(self.vars.names[j].clone())),
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Replaces `var` by the polynomial `value` (same variable set).
    pub fn substitute(&self, var: &str, value: &MPoly) -> Result<MPoly> {
        self.check_vars(value)?;
        let i = self.vars.index(var)?;
        let top = self.degree_in(var)?.finite().unwrap_or(0);
        let mut powers = vec![MPoly::one(&self.vars)];
        for k in 1..=top as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::take(&mut e[i]);
            for (pm, pc) in &powers[k as usize].terms {
                out.add_term(Monomial(e.clone()).mul(pm), c * pc);
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, var: &str) -> Result<MPoly> {
        let i = self.vars.index(var)?;
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * Rational::from_integer(m.0[i].into()));
        }
        Ok(out)
    }

    /// Maps `x_1^e_1 … x_k^e_k` to `X_1^e_1 … X_k^e_k Z^(d - Σe)` where the
    /// target variable set is `[X_1, …, X_k, Z]`.
    pub fn homogenize(&self, total_degree: u32, target: &Arc<VarSet>) -> Result<MPoly> {
        if target.len() != self.vars.len() + 1 {
            return Err(Error::VarSetMismatch {
                left: self.vars.to_string(),
                right: target.to_string(),
            });
        }
        if let Degree::Finite(d) = self.total_degree() {
            if d > total_degree {
                return Err(Error::DegreeTooSmall {
                    target: total_degree,
                    actual: d,
                });
            }
        }
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push(total_degree - m.total_degree());
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets the last variable to 1 and renames the rest positionally into
    /// `target`.
    pub fn dehomogenize(&self, target: &Arc<VarSet>) -> Result<MPoly> {
        if target.len() + 1 != self.vars.len() {
            return Err(Error::VarSetMismatch {
                left: self.vars.to_string(),
                right: target.to_string(),
            });
        }
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.0[..target.len()].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

struct PowerTable {
    powers: Vec<Vec<Rational>>,
}

impl PowerTable {
    fn new<'a>(point: &[Rational], monomials: impl Iterator<Item = &'a Monomial>) -> Self {
        let mut top = vec![0u32; point.len()];
        for m in monomials {
            for (t, e) in top.iter_mut().zip(&m.0) {
                *t = (*t).max(*e);
            }
        }
        PowerTable {
            powers: point
                .iter()
                .zip(&top)
                .map(|(v, &t)| successive_powers(v, t))
                .collect(),
        }
    }

    fn monomial(&self, m: &Monomial) -> Rational {
        m.0.iter()
            .enumerate()
            .fold(Rational::one(), |acc, (i, &e)| acc * &self.powers[i][e as usize])
    }
}

fn successive_powers(v: &Rational, top: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(top as usize + 1);
    out.push(Rational::one());
    for k in 1..=top as usize {
        out.push(&out[k - 1] * v);
    }
    out
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    /// Panics if the variable sets differ; use [`MPoly::try_add`] to recover.
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.try_add(rhs).expect("MPoly addition")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.try_sub(rhs).expect("MPoly subtraction")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.try_mul(rhs).expect("MPoly multiplication")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Coeff for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        MPoly::one(&self.vars)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn is_one_elem(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
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
        self.div_exact(divisor)
    }
    fn scaled(&self, k: &Rational) -> Self {
        self.scale(k)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VarSet, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in vars.names.iter().zip(&m.0) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Highest graded-lex term first, e.g. `s^2*a - 3*a + 1/2`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.total_degree() == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars, self)
    }
}

#[derive(Serialize, Deserialize)]
struct MPolyRepr {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

/// `{"vars": [...], "terms": [[[exponents...], "num/den"], ...]}`, terms in
/// descending graded-lex order.
impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyRepr {
            vars: self.vars.names.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (m.0.clone(), rat_to_fraction(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MPolyRepr::deserialize(deserializer)?;
        let vars = VarSet::new(&repr.vars).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (e, c) in repr.terms {
            if e.len() != vars.len() {
                return Err(D::Error::custom("exponent vector length"));
            }
            terms.push((e, parse_rational(&c).map_err(D::Error::custom)?));
        }
        Ok(MPoly::from_terms(&vars, terms))
    }
}
