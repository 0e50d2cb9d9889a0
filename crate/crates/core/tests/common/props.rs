//! Property checks, each returning the first counterexample as text.

use cuboid_core::pipeline::weighted_homogeneity_holds;
use cuboid_core::poly::{rational_roots_by_enumeration, resultant, resultant_in, split_rational_roots};
use cuboid_core::{MPoly, Rational, RootList, UPoly, VarSet};
use num_traits::Zero;

use super::{q, resultant_euclid};

pub type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn division_reconstructs(f: &UPoly<Rational>, g: &UPoly<Rational>) -> Outcome {
    let (quot, rem) = f.divrem(g).map_err(|e| e.to_string())?;
    ensure(quot.mul(g).add(&rem) == *f, || {
        format!("q*g + r != f for f = {f:?}, g = {g:?}")
    })?;
    ensure(rem.degree() < g.degree(), || {
        format!("deg r >= deg g for f = {f:?}, g = {g:?}")
    })
}

pub fn resultants_agree(f: &UPoly<Rational>, g: &UPoly<Rational>) -> Outcome {
    let bareiss = resultant(f, g).map_err(|e| e.to_string())?;
    let euclid = resultant_euclid(f.coeffs(), g.coeffs());
    ensure(bareiss == euclid, || {
        format!("Bareiss {bareiss} vs Euclid {euclid} for f = {f:?}, g = {g:?}")
    })
}

/// `Res_x(f, g)` evaluated at `y = y0` equals the resultant of the
/// specializations, when neither leading coefficient in `x` vanishes there.
pub fn resultant_specializes(f: &MPoly, g: &MPoly, y0: &Rational) -> Outcome {
    let specialize = |p: &MPoly| {
        p.eval_partial(&[("y", y0.clone())])
            .and_then(|p| p.to_univariate("x"))
            .unwrap()
    };
    let (fu, gu) = (specialize(f), specialize(g));
    let same_degree =
        |p: &MPoly, u: &UPoly<Rational>| !u.is_zero() && p.degree_in("x").unwrap() == u.degree();
    if !same_degree(f, &fu) || !same_degree(g, &gu) {
        return Ok(());
    }
    let full = resultant_in(f, g, "x").map_err(|e| e.to_string())?;
    let at = full
        .eval_partial(&[("x", q(0)), ("y", y0.clone())])
        .map_err(|e| e.to_string())?
        .as_constant()
        .unwrap();
    let direct = resultant(&fu, &gu).map_err(|e| e.to_string())?;
    ensure(at == direct, || {
        format!("Res then eval {at} vs eval then Res {direct} at y = {y0}")
    })
}

/// Builds `scale · Π (x - r)^k · tail` and checks both root finders return
/// exactly the planted roots; `tail` must have no rational root.
pub fn roots_recovered(planted: &[(Rational, u32)], tail: &UPoly<Rational>, scale: &Rational) -> Outcome {
    let mut merged: Vec<(Rational, u32)> = Vec::new();
    for (r, k) in planted {
        match merged.iter_mut().find(|(x, _)| x == r) {
            Some((_, m)) => *m += k,
            None => merged.push((r.clone(), *k)),
        }
    }
    let mut f = tail.scale(scale);
    for (r, k) in &merged {
        f = f.mul(&UPoly::linear(r).pow(*k));
    }
    let expected = RootList::new(merged);
    let modular = split_rational_roots(&f).map_err(|e| e.to_string())?;
    ensure(modular.roots == expected, || {
        format!("modular {} vs planted {expected}", modular.roots)
    })?;
    let (_, tail_monic) = tail.monic().unwrap();
    let (_, cof_monic) = modular.cofactor.monic().unwrap();
    ensure(cof_monic == tail_monic, || {
        "cofactor differs from planted tail".to_string()
    })?;
    let enumerated = rational_roots_by_enumeration(&f).map_err(|e| e.to_string())?;
    ensure(enumerated.roots == expected, || {
        format!("enumeration {} vs planted {expected}", enumerated.roots)
    })?;
    for (r, _) in expected.iter() {
        ensure(f.eval(r).is_zero(), || format!("{r} is not a root"))?;
    }
    Ok(())
}

/// `gcd(f·h, g·h)` is monic and a multiple of `h`.
pub fn gcd_contains_common_factor(f: &UPoly<Rational>, g: &UPoly<Rational>, h: &UPoly<Rational>) -> Outcome {
    let d = f.mul(h).gcd(&g.mul(h)).map_err(|e| e.to_string())?;
    ensure(d.lc() == Some(&q(1)), || format!("gcd not monic: {d:?}"))?;
    let (_, hm) = h.monic().unwrap();
    let (_, r) = d.divrem(&hm).unwrap();
    ensure(r.is_zero(), || format!("h does not divide gcd: {d:?}"))?;
    let (_, rf) = f.mul(h).divrem(&d).unwrap();
    ensure(rf.is_zero(), || "gcd does not divide f*h".to_string())
}

/// Homogenize to degree `extra + total degree`, then dehomogenize.
pub fn homogenize_round_trips(f: &MPoly, extra: u32) -> Outcome {
    let target = VarSet::new(&["X", "Y", "Z"]).unwrap();
    let deg = f.total_degree().finite().unwrap_or(0) + extra;
    let h = f.homogenize(deg, &target).map_err(|e| e.to_string())?;
    ensure(h.is_zero() || h.is_homogeneous(), || {
        format!("not homogeneous: {h}")
    })?;
    let back = h.dehomogenize(f.vars()).map_err(|e| e.to_string())?;
    ensure(back == *f, || format!("round trip changed {f} into {back}"))
}

pub fn weighted_homogeneous(p: i64, q_: i64, t: &Rational, lambda: &Rational) -> Outcome {
    ensure(weighted_homogeneity_holds(&q(p), &q(q_), t, lambda), || {
        format!("Q(lp, lq, l^2 t) != l^20 Q(p, q, t) at p = {p}, q = {q_}, t = {t}, l = {lambda}")
    })
}
