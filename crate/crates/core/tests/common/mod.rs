//! Oracles and generators shared by the integration tests and the
//! acceptance target. Nothing here calls the crate's root finder,
//! resultant, or division routines.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cuboid_core::arith::rat;
use cuboid_core::{BigInt, MPoly, Rational, UPoly, VarSet};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Coefficients of `P_s(x)`, ascending, from the closed form by plain
/// rational arithmetic.
pub fn ps_coeffs(s: &Rational) -> [Rational; 6] {
    let p = |k: i32| s.pow(k);
    [
        -p(5),
        -p(3) * (q(1) + q(2) * s) * (q(-2) + q(3) * s),
        -s * (q(1) - q(14) * s + q(4) * p(2) + q(10) * p(3) + p(4)),
        q(1) + q(10) * s + q(4) * p(2) - q(14) * p(3) + p(4),
        (q(2) + s) * (q(3) - q(2) * s),
        q(1),
    ]
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Positive divisors of `|n|`, `n ≠ 0`, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("oracle values fit in u64");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Whether the monic `y² + a·y + b` divides the integer polynomial `p`
/// (ascending), by schoolbook long division.
fn divides(p: &[BigInt], a: &BigInt, b: &BigInt) -> bool {
    if p.len() < 3 {
        return p.iter().all(|c| c.is_zero());
    }
    let mut r = p.to_vec();
    for k in (2..r.len()).rev() {
        let c = r[k].clone();
        r[k - 1] -= &c * a;
        r[k - 2] -= &c * b;
        r[k] = BigInt::zero();
    }
    r[0].is_zero() && r[1].is_zero()
}

/// Every monic integer quadratic `y² + A·y + B` dividing the monic integer
/// polynomial `p`, by exhaustive search: `B` runs over divisors of the
/// constant term, and `A` is pinned by `D(e) | p(e)` at a point `e` where
/// `p(e) ≠ 0`.
pub fn integer_quadratic_divisors(p: &[BigInt]) -> BTreeSet<(BigInt, BigInt)> {
    let k = p.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    let r = &p[k..];
    let mut cands: Vec<(BigInt, BigInt)> = Vec::new();
    if k >= 2 {
        cands.push((BigInt::zero(), BigInt::zero()));
    }
    if k >= 1 {
        for t in divisors(&r[0]) {
            for t in [t.clone(), -t] {
                if eval_int(r, &t).is_zero() {
                    cands.push((-t, BigInt::zero()));
                }
            }
        }
    }
    let e = (1i64..)
        .flat_map(|m| [m, -m])
        .map(BigInt::from)
        .find(|e| !eval_int(r, e).is_zero())
        .unwrap();
    let re = eval_int(r, &e);
    let de = divisors(&re);
    for b in divisors(&r[0]) {
        for b in [b.clone(), -b] {
            for delta in &de {
                for delta in [delta.clone(), -delta.clone()] {
                    let num = &delta - &e * &e - &b;
                    if (&num % &e).is_zero() {
                        cands.push((num / &e, b.clone()));
                    }
                }
            }
        }
    }
    cands.into_iter().filter(|(a, b)| divides(p, a, b)).collect()
}

/// All `(a, b)` with `x² + a·x + b` dividing `P_s` over ℚ.
///
/// With `s = i/j` and `d = j²`, `d⁵·P_s(y/d)` is monic with integer
/// coefficients, so by Gauss's lemma its rational quadratic divisors are
/// integral; `y² + A·y + B` maps back to `a = A/d`, `b = B/d²`.
pub fn quadratic_divisors(s: &Rational) -> BTreeSet<(Rational, Rational)> {
    let c = ps_coeffs(s);
    let d = Rational::from_integer(s.denom() * s.denom());
    let scaled: Vec<BigInt> = (0..6)
        .map(|k| {
            let v = &c[k] * d.pow(5 - k as i32);
            assert!(v.is_integer(), "scaled quintic must be integral");
            v.to_integer()
        })
        .collect();
    integer_quadratic_divisors(&scaled)
        .into_iter()
        .map(|(a, b)| {
            (
                Rational::from_integer(a) / &d,
                Rational::from_integer(b) / (&d * &d),
            )
        })
        .collect()
}

/// `s = i/j` in lowest terms with `|i|, j ≤ 8`.
pub fn small_grid() -> Vec<Rational> {
    let mut out = Vec::new();
    for j in 1..=8i64 {
        for i in -8..=8i64 {
            if i.unsigned_abs().gcd(&(j as u64)) == 1 {
                out.push(rat(i, j));
            }
        }
    }
    out
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// `f mod g` over ℚ for nonzero `g`, ascending coefficient vectors.
fn rem(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lc = g[dg].clone();
    while r.len() > dg {
        let c = r.last().unwrap() / &lc;
        let shift = r.len() - 1 - dg;
        for (j, gc) in g.iter().enumerate() {
            r[shift + j] -= &c * gc;
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

/// `Res(f, g)` by the Euclidean recurrence
/// `Res(f, g) = (-1)^(mn) · lc(g)^(m - deg r) · Res(g, r)`, `r = f mod g`.
pub fn resultant_euclid(f: &[Rational], g: &[Rational]) -> Rational {
    let (f, g) = (trim(f.to_vec()), trim(g.to_vec()));
    assert!(!f.is_empty() && !g.is_empty());
    let (m, n) = (f.len() - 1, g.len() - 1);
    if n == 0 {
        return g[0].pow(m as i32);
    }
    if m == 0 {
        return f[0].pow(n as i32);
    }
    let r = rem(&f, &g);
    if r.is_empty() {
        return Rational::zero();
    }
    let sign = if (m * n) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    };
    sign * g[n].pow((m - (r.len() - 1)) as i32) * resultant_euclid(&g, &r)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Polynomial of exact degree `deg` in `0..=max_deg`.
pub fn upoly(max_deg: usize) -> impl Strategy<Value = UPoly<Rational>> {
    (0..=max_deg)
        .prop_flat_map(|deg| (prop::collection::vec(small_rational(), deg), nonzero_rational()))
        .prop_map(|(mut low, lc)| {
            low.push(lc);
            UPoly::new(low)
        })
}

pub fn monic(min_deg: usize, max_deg: usize) -> impl Strategy<Value = UPoly<Rational>> {
    prop::collection::vec(small_rational(), min_deg..=max_deg).prop_map(|mut low| {
        low.push(q(1));
        UPoly::new(low)
    })
}

/// Sparse polynomial in `[x, y]` with small exponents.
pub fn mpoly_xy() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..=3, 0u32..=2), small_rational()), 1..6).prop_map(|terms| {
        let vs = VarSet::new(&["x", "y"]).unwrap();
        MPoly::from_terms(&vs, terms.into_iter().map(|((i, j), c)| (vec![i, j], c)))
    })
}

/// Coprime `(p, q)` with `p ≠ q`, both positive.
pub fn cuboid_params() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=40, 1i64..=40).prop_filter("coprime, distinct", |(p, q)| p != q && p.gcd(q) == 1)
}

pub mod props;
