//! Exact integer and rational scalars.
//!
//! `BigInt` and `Rational` are the arbitrary-precision types from `num`;
//! this module adds the handful of operations the rest of the crate needs on
//! top of them: checked normalization, the naive height, divisor enumeration
//! and the textual `p/q` format used by the CLI and JSON reports.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Naive height `max(|p|, q)` of a rational `p/q` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Height(BigInt);

impl Height {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Builds the lowest-terms representative of `num/den`.
pub fn rat_normalize(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

pub fn rat_height(x: &Rational) -> Height {
    Height(x.numer().abs().max(x.denom().clone()))
}

/// Nonnegative gcd; `int_gcd(0, 0) == 0`.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Prime factorization of `|n|` by trial division, primes ascending.
///
/// Runs in machine words while the cofactor fits in a `u64`.
pub fn factor_trial(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::DivisorsOfZero);
    }
    let mut rest = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, out: &mut Vec<(BigInt, u32)>| match out.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => out.push((p, 1)),
    };

    let mut d: u64 = 2;
    loop {
        if let Some(small) = rest.to_u64() {
            let mut m = small;
            while d.saturating_mul(d) <= m {
                while m % d == 0 {
                    push(BigInt::from(d), &mut out);
                    m /= d;
                }
                d += if d == 2 { 1 } else { 2 };
            }
            if m > 1 {
                push(BigInt::from(m), &mut out);
            }
            return Ok(out);
        }
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            push(rest, &mut out);
            return Ok(out);
        }
        while (&rest % &bd).is_zero() {
            push(bd.clone(), &mut out);
            rest /= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

/// All positive divisors of `|n|`, ascending.
pub fn int_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let factors = factor_trial(n)?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let len = divs.len();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                let d = &divs[i] * &pk;
                divs.push(d);
            }
        }
    }
    divs.sort();
    Ok(divs)
}

/// Parses `"n"`, `"-n"` or `"p/q"` (whitespace around the parts is allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        what: "rational",
        input: text.to_string(),
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    rat_normalize(num, den)
}

pub fn parse_int(text: &str) -> Result<BigInt> {
    text.trim().parse().map_err(|_| Error::Parse {
        what: "integer",
        input: text.to_string(),
    })
}

/// Always-explicit `num/den` form used in JSON.
pub fn rat_to_fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rat_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(rat_normalize(int(4), int(-6)).unwrap(), rat(-2, 3));
        let z = rat_normalize(int(0), int(7)).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (int(0), int(1)));
        assert_eq!(rat_normalize(int(20), int(5)).unwrap(), rat_int(4));
        assert_eq!(
            rat_normalize(int(1), int(0)).unwrap_err().to_string(),
            "division by zero"
        );
    }

    #[test]
    fn height_examples() {
        assert_eq!(rat_height(&rat(4, 9)).into_inner(), int(9));
        assert_eq!(rat_height(&rat_int(-1)).into_inner(), int(1));
        assert_eq!(rat_height(&rat_int(0)).into_inner(), int(1));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(int_gcd(&int(12), &int(18)), int(6));
        assert_eq!(int_gcd(&int(0), &int(5)), int(5));
        assert_eq!(int_gcd(&int(-4), &int(6)), int(2));
        assert_eq!(int_gcd(&int(0), &int(0)), int(0));
    }

    #[test]
    fn divisor_examples() {
        let d = |n: i64| int_divisors(&int(n)).unwrap();
        assert_eq!(d(12), [1, 2, 3, 4, 6, 12].map(int));
        assert_eq!(d(1), [int(1)]);
        assert_eq!(d(-9), [1, 3, 9].map(int));
        assert_eq!(
            int_divisors(&int(0)).unwrap_err().to_string(),
            "divisors of zero undefined"
        );
    }

    #[test]
    fn divisors_match_mod_test_exhaustively() {
        for n in (-10_000i64..=10_000).filter(|&n| n != 0) {
            let divs = int_divisors(&int(n)).unwrap();
            let brute: Vec<BigInt> = (1..=n.abs()).filter(|d| n % d == 0).map(int).collect();
            assert_eq!(divs, brute, "n = {n}");
        }
    }

    #[test]
    fn divisors_beyond_u64() {
        let n: BigInt = "369152308224".parse::<BigInt>().unwrap() << 70;
        let divs = int_divisors(&n).unwrap();
        assert!(divs.iter().all(|d| (&n % d).is_zero()));
        assert_eq!(divs.last().unwrap(), &n);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("4/9").unwrap(), rat(4, 9));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rat_to_fraction(&rat_int(-1)), "-1/1");
        assert_eq!(rat(4, 9).to_string(), "4/9");
        assert_eq!(rat_int(-2).to_string(), "-2");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rat_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rat_sqrt(&rat_int(2)), None);
        assert_eq!(rat_sqrt(&rat_int(-4)), None);
    }
}
