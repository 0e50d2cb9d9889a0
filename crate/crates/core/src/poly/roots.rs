//! Rational roots of univariate polynomials over ℚ.
//!
//! Two independent routes are provided:
//!
//! * [`split_rational_roots`] reduces the squarefree primitive part modulo a
//!   prime where it stays squarefree, Hensel-lifts every root mod p, and
//!   reconstructs candidates `c / lc` from the symmetric residue of
//!   `lc · root`. A rational root `p/q` of an integer polynomial has
//!   `q | lc` and `p | c₀`, so `lc · p/q` is an integer of absolute value at
//!   most `|lc · c₀|`; lifting past twice that bound recovers it exactly.
//!   This stays fast when the coefficients have dozens of digits.
//! * [`rational_roots_by_enumeration`] is the textbook rational root theorem:
//!   every `±d₀/dₙ` with `d₀ | c₀`, `dₙ | lc` inside the Cauchy bound is
//!   evaluated. It factors the end coefficients by trial division and is only
//!   practical for moderate coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Degree, UPoly};
use crate::arith::{int_divisors, rat_to_fraction, Rational};
use crate::error::{Error, Result};

/// Distinct rational roots with multiplicities, ascending by root.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootList(Vec<(Rational, u32)>);

impl RootList {
    pub fn new(mut roots: Vec<(Rational, u32)>) -> Self {
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        RootList(roots)
    }

    pub fn as_slice(&self) -> &[(Rational, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Rational, u32)> {
        self.0.iter()
    }

    pub fn roots(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter().map(|(r, _)| r)
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }
}

/// Printed as `[ <0, 4>, <2, 6> ]`.
impl fmt::Display for RootList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("[]");
        }
        let parts: Vec<String> = self.0.iter().map(|(r, k)| format!("<{r}, {k}>")).collect();
        write!(f, "[ {} ]", parts.join(", "))
    }
}

impl Serialize for RootList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0
            .iter()
            .map(|(r, k)| (rat_to_fraction(r), *k))
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootList {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<(String, u32)>::deserialize(d)?;
        let roots = raw
            .into_iter()
            .map(|(r, k)| Ok((crate::arith::parse_rational(&r).map_err(D::Error::custom)?, k)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(RootList::new(roots))
    }
}

/// Roots found together with what is left after removing them:
/// `f = cofactor · Π (x - r)^k`, and the cofactor has no rational root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootExtraction {
    pub roots: RootList,
    pub cofactor: UPoly<Rational>,
}

pub fn rational_roots(f: &UPoly<Rational>) -> Result<RootList> {
    Ok(split_rational_roots(f)?.roots)
}

pub fn split_rational_roots(f: &UPoly<Rational>) -> Result<RootExtraction> {
    extract(f, |g| Ok(lifted_roots(&g.primitive_integer_coeffs()?)))
}

/// Same contract as [`split_rational_roots`], via exhaustive candidates.
pub fn rational_roots_by_enumeration(f: &UPoly<Rational>) -> Result<RootExtraction> {
    extract(f, |g| {
        Ok(rrt_candidates(g)?
            .into_iter()
            .filter(|c| g.eval(c).is_zero())
            .collect())
    })
}

/// Every `±d₀/dₙ` allowed by the rational root theorem for the primitive
/// integer form of `f` (zero included when `f(0) = 0`), pruned to the Cauchy
/// bound `1 + max |aᵢ/aₙ|`, ascending.
pub fn rrt_candidates(f: &UPoly<Rational>) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("rational roots"));
    }
    let low = f.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let g = UPoly::new(f.coeffs()[low..].to_vec());
    let mut out = Vec::new();
    if low > 0 {
        out.push(Rational::zero());
    }
    if g.degree() == 0 {
        return Ok(out);
    }
    let ints = g.primitive_integer_coeffs()?;
    let lc = ints.last().unwrap();
    let bound = cauchy_bound(&ints);
    let nums = int_divisors(&ints[0])?;
    let dens = int_divisors(lc)?;
    for n in &nums {
        for d in &dens {
            let c = Rational::new(n.clone(), d.clone());
            if c <= bound && c.denom() == d {
                out.push(-c.clone());
                out.push(c);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn cauchy_bound(ints: &[BigInt]) -> Rational {
    let lc = ints.last().unwrap().abs();
    let top = ints[..ints.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rational::one() + Rational::new(top, lc)
}

/// Strips the root at zero, asks `nonzero_roots` for the distinct nonzero
/// rational roots of what remains, then deflates each to get multiplicities.
fn extract<F>(f: &UPoly<Rational>, nonzero_roots: F) -> Result<RootExtraction>
where
    F: Fn(&UPoly<Rational>) -> Result<Vec<Rational>>,
{
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("rational roots"));
    }
    let low = f.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if low > 0 {
        roots.push((Rational::zero(), low as u32));
    }
    let mut rest = UPoly::new(f.coeffs()[low..].to_vec());
    if rest.degree() > Degree::Finite(0) {
        let mut found = nonzero_roots(&rest)?;
        found.sort();
        found.dedup();
        for r in found {
            let (k, cof) = rest.deflate(&r)?;
            roots.push((r, k));
            rest = cof;
        }
    }
    Ok(RootExtraction {
        roots: RootList::new(roots),
        cofactor: rest,
    })
}

/// Distinct rational roots of a primitive integer polynomial with nonzero
/// constant term and degree ≥ 1.
fn lifted_roots(ints: &[BigInt]) -> Vec<Rational> {
    if ints.len() == 2 {
        return vec![Rational::new(-&ints[0], ints[1].clone())];
    }
    let squarefree;
    let (h, prime) = match pick_prime(ints, PRIME_TRIES) {
        Some(p) => (ints, p),
        None => {
            squarefree = squarefree_part(ints);
            if squarefree.len() == 2 {
                return vec![Rational::new(-&squarefree[0], squarefree[1].clone())];
            }
            let p = pick_prime(&squarefree, usize::MAX)
                .expect("only finitely many primes divide the discriminant");
            (squarefree.as_slice(), p)
        }
    };

    let lc = h.last().unwrap();
    let bound = lc.abs() * h[0].abs();
    let twice_bound = &bound * 2u32;
    let p = BigInt::from(prime);
    let dh: Vec<BigInt> = h
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();

    let mut out = Vec::new();
    for r in roots_mod_p(h, prime) {
        let mut x = BigInt::from(r);
        let mut modulus = p.clone();
        while modulus <= twice_bound {
            modulus = &modulus * &modulus;
            let fx = eval_mod(h, &x, &modulus);
            let dfx = eval_mod(&dh, &x, &modulus);
            let inv = mod_inverse(&dfx, &modulus).expect("simple root mod p");
            x = (x - fx * inv).mod_floor(&modulus);
        }
        let mut c = (lc * &x).mod_floor(&modulus);
        if c > &modulus / 2u32 {
            c -= &modulus;
        }
        if c.abs() > bound {
            continue;
        }
        let cand = Rational::new(c, lc.clone());
        if is_root_int(h, &cand) {
            out.push(cand);
        }
    }
    out
}

/// `Σ hᵢ pⁱ q^(n-i) == 0` for the candidate `p/q`.
fn is_root_int(h: &[BigInt], x: &Rational) -> bool {
    let (p, q) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in h.iter().rev() {
        acc = acc * p + c * &qpow;
        qpow *= q;
    }
    acc.is_zero()
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn squarefree_part(ints: &[BigInt]) -> Vec<BigInt> {
    let f = UPoly::from_bigints(ints);
    let g = f.gcd(&f.derivative()).expect("nonzero");
    let (q, r) = f.divrem(&g).expect("gcd is monic");
    debug_assert!(r.is_zero());
    q.primitive_integer_coeffs().expect("nonzero")
}

const FIRST_PRIME: u64 = 101;
const PRIME_TRIES: usize = 40;

/// First prime ≥ 101 not dividing the leading coefficient for which the
/// reduction stays squarefree; `None` if the polynomial is not squarefree
/// (or unlucky on every tried prime).
fn pick_prime(ints: &[BigInt], tries: usize) -> Option<u64> {
    primes_from(FIRST_PRIME).take(tries).find(|&p| {
        let f = reduce_mod(ints, p);
        f.len() == ints.len() && {
            let df = derivative_mod(&f, p);
            gcd_mod(f, df, p).len() == 1
        }
    })
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce_mod(ints: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = ints.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    trim_mod(&mut out);
    out
}

fn trim_mod(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn derivative_mod(f: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| (k as u64 % p) * c % p)
        .collect();
    trim_mod(&mut out);
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1 - db;
            let q = a.last().unwrap() * inv % p;
            for (j, c) in b.iter().enumerate() {
                a[k + j] = (a[k + j] + p - q * c % p) % p;
            }
            trim_mod(&mut a);
            if a.len() <= db {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn roots_mod_p(ints: &[BigInt], p: u64) -> Vec<u64> {
    let f = reduce_mod(ints, p);
    (0..p)
        .filter(|&x| f.iter().rev().fold(0, |acc, c| (acc * x + c) % p) == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn q(c: &[i64]) -> UPoly<Rational> {
        UPoly::from_ints(c)
    }

    fn from_roots(roots: &[(Rational, u32)], extra: &UPoly<Rational>) -> UPoly<Rational> {
        roots
            .iter()
            .fold(extra.clone(), |acc, (r, k)| acc.mul(&UPoly::linear(r).pow(*k)))
    }

    #[test]
    fn cubic_with_double_root() {
        let f = q(&[1, -1, -1, 1]);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots.as_slice(), [(rat_int(-1), 1), (rat_int(1), 2)]);
        assert_eq!(roots.to_string(), "[ <-1, 1>, <1, 2> ]");
    }

    #[test]
    fn zero_root_and_fractions() {
        let planted = [(rat_int(0), 4), (rat(2, 3), 1), (rat(-5, 7), 3)];
        let f = from_roots(&planted, &q(&[1, 0, 1]));
        let ex = split_rational_roots(&f).unwrap();
        assert_eq!(
            ex.roots.as_slice(),
            [(rat(-5, 7), 3), (rat_int(0), 4), (rat(2, 3), 1)]
        );
        assert_eq!(ex.cofactor, q(&[1, 0, 1]));
        assert_eq!(rational_roots_by_enumeration(&f).unwrap(), ex);
    }

    #[test]
    fn no_roots_and_errors() {
        assert!(rational_roots(&q(&[2, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&q(&[7])).unwrap().is_empty());
        assert!(rational_roots(&UPoly::zero()).is_err());
    }

    #[test]
    fn huge_coefficients_are_handled_by_lifting() {
        let big: BigInt = BigInt::from(10).pow(40) + 7;
        let r = Rational::new(big.clone(), BigInt::from(3).pow(25));
        let f = UPoly::linear(&r).mul(&q(&[-3, 5, 0, 11]));
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots.as_slice(), [(r, 1)]);
    }

    #[test]
    fn candidates_respect_cauchy_bound() {
        // x^2 - 12: candidates with |c| <= 13.
        let cands = rrt_candidates(&q(&[-12, 0, 1])).unwrap();
        assert!(cands.iter().all(|c| c.abs() <= rat_int(13)));
        assert!(cands.contains(&rat_int(12)) && cands.contains(&rat_int(-1)));
        assert_eq!(rrt_candidates(&q(&[0, 0, 5])).unwrap(), [rat_int(0)]);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(gcd_mod(vec![1, 0, 1], vec![0, 2], 7), vec![1]);
        // (x - 1)^2 = x^2 - 2x + 1 is not squarefree.
        let f = vec![1, 5, 1];
        assert_eq!(gcd_mod(f.clone(), derivative_mod(&f, 7), 7).len(), 2);
        assert_eq!(
            mod_inverse(&BigInt::from(3), &BigInt::from(11)),
            Some(BigInt::from(4))
        );
    }
}
