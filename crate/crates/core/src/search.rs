//! Rational points of bounded height on the projective closure of `F = 0`.
//!
//! The affine chart is searched fibre by fibre: every `s0 = p/q` of height at
//! most the bound contributes all rational roots of `F(s0, ·)`, with no bound
//! on `a`. This bounds the height of `s` only, which is not the same as a
//! projective height bound on `(S : A : Z)`. The line at infinity is solved
//! exactly.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{BigInt, Rational};
use crate::error::{Error, Result};
use crate::model::ObstructionSystem;
use crate::poly::{rational_roots, MPoly, UPoly, VarSet};

/// Total degree of `F`, and so of its homogenization.
pub const CURVE_DEGREE: u32 = 17;

/// Largest accepted bound; the enumeration uses machine integers for `p, q`.
pub const MAX_BOUND: u64 = 1_000_000;

/// A point `(S : A : Z)` with coprime integer coordinates, scaled so that the
/// last nonzero coordinate is positive. Affine points therefore print as
/// `(s : a : 1)` when `s, a` are integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    s: BigInt,
    a: BigInt,
    z: BigInt,
}

impl ProjPoint {
    pub fn new(s: BigInt, a: BigInt, z: BigInt) -> Result<Self> {
        if s.is_zero() && a.is_zero() && z.is_zero() {
            return Err(Error::InvalidConfig("projective point with all coordinates zero"));
        }
        let g = s.gcd(&a).gcd(&z);
        let (mut s, mut a, mut z) = (s / &g, a / &g, z / &g);
        let last = [&z, &a, &s].into_iter().find(|c| !c.is_zero()).unwrap();
        if last.is_negative() {
            s = -s;
            a = -a;
            z = -z;
        }
        Ok(ProjPoint { s, a, z })
    }

    pub fn from_rationals(s: &Rational, a: &Rational, z: &Rational) -> Result<Self> {
        let den = s.denom().lcm(a.denom()).lcm(z.denom());
        let scale = |x: &Rational| x.numer() * (&den / x.denom());
        ProjPoint::new(scale(s), scale(a), scale(z))
    }

    pub fn affine(s: &Rational, a: &Rational) -> Self {
        ProjPoint::from_rationals(s, a, &Rational::one()).expect("z = 1")
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.s, &self.a, &self.z]
    }

    pub fn at_infinity(&self) -> bool {
        self.z.is_zero()
    }

    /// `(S/Z, A/Z)` for points off the line at infinity.
    pub fn to_affine(&self) -> Option<(Rational, Rational)> {
        (!self.z.is_zero()).then(|| {
            (
                Rational::new(self.s.clone(), self.z.clone()),
                Rational::new(self.a.clone(), self.z.clone()),
            )
        })
    }

    fn rationals(&self) -> [Rational; 3] {
        [&self.s, &self.a, &self.z].map(|c| Rational::from_integer(c.clone()))
    }

    fn rank(&self) -> u8 {
        match (self.z.is_zero(), self.a.is_zero()) {
            (false, _) => 0,
            (true, false) => 1,
            (true, true) => 2,
        }
    }
}

/// Affine points first, in [`affine_order`]; then points at infinity by
/// `S/A`, with `(1 : 0 : 0)` last.
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match self.rank() {
            0 => affine_order(&self.to_affine().unwrap(), &other.to_affine().unwrap()),
            1 => Rational::new(self.s.clone(), self.a.clone())
                .cmp(&Rational::new(other.s.clone(), other.a.clone())),
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.s, self.a, self.z)
    }
}

/// Lexicographic by `(s numerator, s denominator, a numerator, a denominator)`.
pub fn affine_order(x: &(Rational, Rational), y: &(Rational, Rational)) -> Ordering {
    let key = |(s, a): &(Rational, Rational)| {
        [
            s.numer().clone(),
            s.denom().clone(),
            a.numer().clone(),
            a.denom().clone(),
        ]
    };
    key(x).cmp(&key(y))
}

/// `F̂(S, A, Z)` with its three partial derivatives.
#[derive(Debug, Clone)]
pub struct ProjectiveCurve {
    pub fhat: MPoly,
    partials: [MPoly; 3],
}

impl ProjectiveCurve {
    pub fn eval(&self, pt: &ProjPoint) -> Rational {
        self.fhat.eval(&pt.rationals())
    }

    pub fn contains(&self, pt: &ProjPoint) -> bool {
        self.eval(pt).is_zero()
    }

    /// Whether all three partials vanish at a point of the curve.
    pub fn singular_verify(&self, pt: &ProjPoint) -> Result<bool> {
        if !self.contains(pt) {
            return Err(Error::NotOnCurve);
        }
        let x = pt.rationals();
        Ok(self.partials.iter().all(|d| d.eval(&x).is_zero()))
    }
}

pub fn homogenized_curve(sys: &ObstructionSystem) -> Result<ProjectiveCurve> {
    let deg = sys.f().total_degree();
    if deg != CURVE_DEGREE {
        return Err(Error::IdentityFailed(format!(
            "total degree of F is {deg}, expected {CURVE_DEGREE}"
        )));
    }
    let vs = VarSet::new(&["S", "A", "Z"])?;
    let fhat = sys.f().homogenize(CURVE_DEGREE, &vs)?;
    if !fhat.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let partials = [
        fhat.derivative("S")?,
        fhat.derivative("A")?,
        fhat.derivative("Z")?,
    ];
    Ok(ProjectiveCurve { fhat, partials })
}

/// All rational points with `Z = 0`, from the charts `A = 1` and `S = 1`.
pub fn infinity_points(curve: &ProjectiveCurve) -> Result<Vec<ProjPoint>> {
    let fhat = &curve.fhat;
    if !fhat.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let form = fhat.eval_partial(&[("Z", zero.clone())])?;
    if form.is_zero() {
        return Err(Error::LineAtInfinityInCurve);
    }
    let chart = |fixed: &str, free: &str| -> Result<Vec<Rational>> {
        let u = form.eval_partial(&[(fixed, one.clone())])?.to_univariate(free)?;
        Ok(rational_roots(&u)?.roots().cloned().collect())
    };
    let mut out = Vec::new();
    for s in chart("A", "S")? {
        out.push(ProjPoint::from_rationals(&s, &one, &zero)?);
    }
    for a in chart("S", "A")? {
        out.push(ProjPoint::from_rationals(&one, &a, &zero)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub bound: BigInt,
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(bound: BigInt, workers: usize) -> Result<Self> {
        if bound < BigInt::one() {
            return Err(Error::InvalidConfig("bound must be at least 1"));
        }
        if bound > BigInt::from(MAX_BOUND) {
            return Err(Error::InvalidConfig(
                "bound exceeds the supported maximum of 1000000",
            ));
        }
        if workers == 0 {
            return Err(Error::InvalidConfig("workers must be positive"));
        }
        Ok(SearchConfig { bound, workers })
    }

    fn bound_u64(&self) -> u64 {
        self.bound.to_u64().expect("validated bound")
    }
}

/// `q¹⁶·F(p/q, a)` with integer coefficients, evaluated from a table of the
/// coefficients of `F`.
#[derive(Debug, Clone)]
pub struct FiberTable {
    /// `rows[j]` lists `(i, c_ij)` with `F = Σ c_ij s^i a^j`.
    rows: Vec<Vec<(u32, BigInt)>>,
    deg_s: u32,
}

impl FiberTable {
    pub fn new(sys: &ObstructionSystem) -> Self {
        let f = sys.f();
        let deg_s = f.degree_in("s").unwrap().finite().unwrap_or(0);
        let deg_a = f.degree_in("a").unwrap().finite().unwrap_or(0);
        let mut rows = vec![Vec::new(); deg_a as usize + 1];
        for (m, c) in f.terms() {
            assert!(c.is_integer(), "F has integer coefficients");
            rows[m.0[1] as usize].push((m.0[0], c.numer().clone()));
        }
        FiberTable { rows, deg_s }
    }

    /// The fibre over `s0 = p/q` up to the nonzero factor `q^deg_s`.
    pub fn scaled_fiber(&self, p: &BigInt, q: &BigInt) -> UPoly<Rational> {
        let powers = |x: &BigInt| {
            let mut out = vec![BigInt::one()];
            for k in 0..self.deg_s as usize {
                let next = &out[k] * x;
                out.push(next);
            }
            out
        };
        let (pp, qp) = (powers(p), powers(q));
        let coeffs: Vec<BigInt> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(i, c)| c * &pp[*i as usize] * &qp[(self.deg_s - i) as usize])
                    .sum()
            })
            .collect();
        UPoly::from_bigints(&coeffs)
    }
}

/// Result of scanning one block of `s` candidates.
#[derive(Debug, Default)]
struct Block {
    pairs: Vec<(Rational, Rational)>,
    zero_fibers: Vec<Rational>,
}

fn scan(table: &FiberTable, bound: u64, qs: std::ops::Range<u64>) -> Block {
    let mut block = Block::default();
    let b = bound as i64;
    for q in qs {
        let qb = BigInt::from(q);
        for p in -b..=b {
            if p.unsigned_abs().gcd(&q) != 1 {
                continue;
            }
            let pb = BigInt::from(p);
            let s0 = Rational::new(pb.clone(), qb.clone());
            let fib = table.scaled_fiber(&pb, &qb);
            if fib.is_zero() {
                block.zero_fibers.push(s0);
                continue;
            }
            for a0 in rational_roots(&fib).expect("nonzero fibre").roots() {
                block.pairs.push((s0.clone(), a0.clone()));
            }
        }
    }
    block
}

/// Splits `1..=bound` into `workers` contiguous ranges of nearly equal size.
fn q_blocks(bound: u64, workers: usize) -> Vec<std::ops::Range<u64>> {
    let w = (workers as u64).clamp(1, bound);
    (0..w)
        .map(|k| (1 + k * bound / w)..(1 + (k + 1) * bound / w))
        .collect()
}

/// Affine points `(s0, a0)` with `height(s0) ≤ bound`, every rational `a0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSearch {
    pub pairs: Vec<(Rational, Rational)>,
    /// Values of `s0` with `F(s0, ·) ≡ 0`; expected empty.
    pub zero_fibers: Vec<Rational>,
}

pub fn affine_search(sys: &ObstructionSystem, cfg: &SearchConfig) -> AffineSearch {
    let table = Arc::new(FiberTable::new(sys));
    let bound = cfg.bound_u64();
    let blocks = q_blocks(bound, cfg.workers);
    let results: Vec<Block> = if blocks.len() == 1 {
        vec![scan(&table, bound, blocks[0].clone())]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = blocks
                .into_iter()
                .map(|range| {
                    let table = Arc::clone(&table);
                    scope.spawn(move || scan(&table, bound, range))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };
    let mut pairs = Vec::new();
    let mut zero_fibers = Vec::new();
    for b in results {
        pairs.extend(b.pairs);
        zero_fibers.extend(b.zero_fibers);
    }
    pairs.sort_by(affine_order);
    zero_fibers.sort();
    AffineSearch { pairs, zero_fibers }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub bound: BigInt,
    pub curve_degree: u32,
    pub points: Vec<ProjPoint>,
    pub affine: Vec<(Rational, Rational)>,
    pub infinity: Vec<ProjPoint>,
    /// Affine points with `s > 0` and `s ≠ 1`.
    pub violating: Vec<(Rational, Rational)>,
    /// Parallel to `points`.
    pub singular: Vec<bool>,
    pub zero_fibers: Vec<Rational>,
}

impl SearchReport {
    pub fn singular_points(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points
            .iter()
            .zip(&self.singular)
            .filter_map(|(p, &f)| f.then_some(p))
    }
}

pub fn is_violating(s: &Rational) -> bool {
    s.is_positive() && !s.is_one()
}

pub fn run_search(sys: &ObstructionSystem, cfg: &SearchConfig) -> Result<SearchReport> {
    let curve = homogenized_curve(sys)?;
    let infinity = infinity_points(&curve)?;
    let found = affine_search(sys, cfg);
    let mut points: Vec<ProjPoint> = found
        .pairs
        .iter()
        .map(|(s, a)| ProjPoint::affine(s, a))
        .chain(infinity.iter().cloned())
        .collect();
    points.sort();
    points.dedup();
    for pt in &points {
        if !curve.contains(pt) {
            return Err(Error::IdentityFailed(format!(
                "search produced {pt}, which is not on the curve"
            )));
        }
    }
    let singular = points
        .iter()
        .map(|pt| curve.singular_verify(pt))
        .collect::<Result<Vec<_>>>()?;
    let affine: Vec<_> = points.iter().filter_map(ProjPoint::to_affine).collect();
    let violating = affine.iter().filter(|(s, _)| is_violating(s)).cloned().collect();
    Ok(SearchReport {
        bound: cfg.bound.clone(),
        curve_degree: curve.fhat.total_degree().finite().unwrap_or(0),
        points,
        affine,
        infinity,
        violating,
        singular,
        zero_fibers: found.zero_fibers,
    })
}
