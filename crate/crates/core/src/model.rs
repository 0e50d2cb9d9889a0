//! Closed-form polynomials of the cuboid quintic family and the identity
//! checks tying them together.
//!
//! Every closed form is entered as an integer-coefficient expression and
//! expanded by the polynomial engine.

use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigInt, Rational};
use crate::error::{Error, Result};
use crate::poly::{resultant_in, Degree, MPoly, UPoly, VarSet};

const QPQ: &str = "t^10 + (2*q^2 + p^2)*(3*q^2 - 2*p^2)*t^8 \
    + (q^8 + 10*p^2*q^6 + 4*p^4*q^4 - 14*p^6*q^2 + p^8)*t^6 \
    - p^2*q^2*(q^8 - 14*p^2*q^6 + 4*p^4*q^4 + 10*p^6*q^2 + p^8)*t^4 \
    - p^6*q^6*(q^2 + 2*p^2)*(-2*q^2 + 3*p^2)*t^2 \
    - p^10*q^10";

const QR: &str = "u^10 + (2 + r^2)*(3 - 2*r^2)*u^8 \
    + (1 + 10*r^2 + 4*r^4 - 14*r^6 + r^8)*u^6 \
    - r^2*(1 - 14*r^2 + 4*r^4 + 10*r^6 + r^8)*u^4 \
    - r^6*(1 + 2*r^2)*(-2 + 3*r^2)*u^2 \
    - r^10";

/// Coefficients of `P_s(x)` from `x^0` to `x^5`.
const PS_COEFFS: [&str; 6] = [
    "-s^5",
    "-s^3*(1 + 2*s)*(-2 + 3*s)",
    "-s*(1 - 14*s + 4*s^2 + 10*s^3 + s^4)",
    "1 + 10*s + 4*s^2 - 14*s^3 + s^4",
    "(2 + s)*(3 - 2*s)",
    "1",
];

const U: &str = "-3*a^2 + (12 - 4*s^2 - 2*s)*a + (-s^4 + 14*s^3 - 4*s^2 - 10*s - 1)";
const V: &str = "a^4 + (2*s^2 + s - 6)*a^3 + (s^4 - 14*s^3 + 4*s^2 + 10*s + 1)*a^2 \
    + (s^5 + 10*s^4 + 4*s^3 - 14*s^2 + s)*a + (-6*s^5 + s^4 + 2*s^3)";
const M: &str = "-2*a - 2*s^2 - s + 6";
const N: &str = "a^3 + (2*s^2 + s - 6)*a^2 + (s^4 - 14*s^3 + 4*s^2 + 10*s + 1)*a \
    + (s^5 + 10*s^4 + 4*s^3 - 14*s^2 + s)";

pub const DEG_S_F: u32 = 16;
pub const DEG_A_F: u32 = 10;

fn vars(names: &[&str]) -> Arc<VarSet> {
    VarSet::new(names).expect("static variable names")
}

fn parse(vs: &Arc<VarSet>, text: &str) -> MPoly {
    MPoly::parse(vs, text).expect("static closed form")
}

/// Coprime positive `(p, q)`. Construction through [`CuboidParams::new`]
/// also enforces `p ≠ q`; [`CuboidParams::any`] admits parameters outside
/// the cuboid domain for pure algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuboidParams {
    p: BigInt,
    q: BigInt,
}

impl CuboidParams {
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        let invalid = |reason| Error::InvalidParams {
            p: p.to_string(),
            q: q.to_string(),
            reason,
        };
        if !p.is_positive() || !q.is_positive() {
            return Err(invalid("p and q must be positive"));
        }
        if !p.gcd(&q).is_one() {
            return Err(invalid("p and q must be coprime"));
        }
        if p == q {
            return Err(invalid("p must differ from q"));
        }
        Ok(CuboidParams { p, q })
    }

    /// Any `q ≠ 0`.
    pub fn any(p: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidParams {
                p: p.to_string(),
                q: q.to_string(),
                reason: "q must be nonzero",
            });
        }
        Ok(CuboidParams { p, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn in_domain(&self) -> bool {
        self.p.is_positive() && self.q.is_positive() && self.p.gcd(&self.q).is_one() && self.p != self.q
    }

    /// `s = (p/q)²`.
    pub fn s(&self) -> Rational {
        let r = Rational::new(self.p.clone(), self.q.clone());
        &r * &r
    }
}

/// `Q_{p,q}(t)` for arbitrary integers, without domain checks.
pub fn qpq_poly(p: &BigInt, q: &BigInt) -> UPoly<Rational> {
    let vs = vars(&["p", "q", "t"]);
    parse(&vs, QPQ)
        .eval_partial(&[
            ("p", Rational::from_integer(p.clone())),
            ("q", Rational::from_integer(q.clone())),
        ])
        .and_then(|f| f.to_univariate("t"))
        .expect("Q_{p,q} specializes to a polynomial in t")
}

/// Sharipov's second cuboid polynomial for parameters in the cuboid domain.
pub fn build_qpq(params: &CuboidParams) -> Result<UPoly<Rational>> {
    if !params.in_domain() {
        return Err(CuboidParams::new(params.p.clone(), params.q.clone()).unwrap_err());
    }
    Ok(qpq_poly(&params.p, &params.q))
}

/// `Q_{p,q}(t)` as a polynomial in `[p, q, t]`.
pub fn qpq_symbolic() -> MPoly {
    parse(&vars(&["p", "q", "t"]), QPQ)
}

/// `Q_r(u)` as a polynomial in `[r, u]`.
pub fn qr_symbolic() -> MPoly {
    parse(&vars(&["r", "u"]), QR)
}

/// `Q_r(u) = P_s(u²)` with `s = r²`, as an identity in `ℚ[r, u]`.
pub fn qr_identity_holds() -> bool {
    let vs = vars(&["r", "u"]);
    let ring = vars(&["s", "r", "u"]);
    let r2 = parse(&ring, "r^2");
    let u2 = parse(&vs, "u^2");
    let ps = ps_symbolic_in(&ring).expect("s is present");
    let mut sum = MPoly::zero(&vs);
    for (k, c) in ps.coeffs().iter().enumerate() {
        let c = c
            .substitute("s", &r2)
            .and_then(|c| c.remap(&vs))
            .expect("s eliminated");
        sum = &sum + &(&c * &u2.pow(k as u32));
    }
    sum == qr_symbolic()
}

/// `P_s(x)` with coefficients in `ring`, which must contain `s`.
pub fn ps_symbolic_in(ring: &Arc<VarSet>) -> Result<UPoly<MPoly>> {
    ring.index("s")?;
    let s_ring = vars(&["s"]);
    PS_COEFFS
        .iter()
        .map(|c| parse(&s_ring, c).remap(ring))
        .collect::<Result<Vec<_>>>()
        .map(UPoly::new)
}

/// The monic quintic `P_s(x)` over `ℚ[s]`.
pub fn build_ps_symbolic() -> UPoly<MPoly> {
    ps_symbolic_in(&vars(&["s"])).expect("s is present")
}

/// `P_{s0}(x)` for a rational `s0`.
pub fn ps_at(s0: &Rational) -> UPoly<Rational> {
    let s_ring = vars(&["s"]);
    UPoly::new(
        PS_COEFFS
            .iter()
            .map(|c| parse(&s_ring, c).eval(std::slice::from_ref(s0)))
            .collect(),
    )
}

/// The bundle `(u, v, m, n, L, C, F)` over `ℚ[s, a]`.
///
/// Constructed once, checked at construction, and shared read-only by every
/// downstream analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionSystem {
    vars: Arc<VarSet>,
    u: MPoly,
    v: MPoly,
    m: MPoly,
    n: MPoly,
    l: MPoly,
    c: MPoly,
    f: MPoly,
}

impl ObstructionSystem {
    /// The canonical system from the closed forms.
    ///
    /// Panics if a build-time identity fails, which can only mean the closed
    /// forms were mistranscribed.
    pub fn build() -> Self {
        let vs = vars(&["s", "a"]);
        Self::from_parts(parse(&vs, U), parse(&vs, V), parse(&vs, M), parse(&vs, N))
            .expect("obstruction system identities")
    }

    /// Process-wide shared instance of [`ObstructionSystem::build`].
    pub fn shared() -> &'static ObstructionSystem {
        static SYSTEM: OnceLock<ObstructionSystem> = OnceLock::new();
        SYSTEM.get_or_init(Self::build)
    }

    /// Derives `L`, `C`, `F` from `u, v, m, n` over `[s, a]` and checks the
    /// system invariants.
    pub fn from_parts(u: MPoly, v: MPoly, m: MPoly, n: MPoly) -> Result<Self> {
        let vs = vars(&["s", "a"]);
        let (u, v, m, n) = (u.remap(&vs)?, v.remap(&vs)?, m.remap(&vs)?, n.remap(&vs)?);
        let s5 = MPoly::var(&vs, "s")?.pow(5);
        let l = &n - &(&m * &u);
        let c = &(&m * &v) + &s5;
        let f = &(&(&c * &c) + &(&(&u * &l) * &c)) + &(&v * &(&l * &l));
        let sys = ObstructionSystem {
            vars: vs,
            u,
            v,
            m,
            n,
            l,
            c,
            f,
        };
        sys.check_identities()?;
        Ok(sys)
    }

    fn check_identities(&self) -> Result<()> {
        let s5 = MPoly::var(&self.vars, "s")?.pow(5);
        let checks = [
            ("L = n - m*u", &self.l - &(&self.n - &(&self.m * &self.u))),
            ("C = m*v + s^5", &self.c - &(&(&self.m * &self.v) + &s5)),
            (
                "F = C^2 + u*L*C + v*L^2",
                &self.f
                    - &(&(&self.c.pow(2) + &(&(&self.u * &self.l) * &self.c)) + &(&self.v * &self.l.pow(2))),
            ),
        ];
        for (name, diff) in checks {
            if !diff.is_zero() {
                return Err(Error::IdentityFailed(format!("{name}: difference {diff}")));
            }
        }
        let ds = self.f.degree_in("s")?;
        let da = self.f.degree_in("a")?;
        if ds != DEG_S_F || da != DEG_A_F {
            return Err(Error::IdentityFailed(format!(
                "deg_s F = {ds}, deg_a F = {da}; expected {DEG_S_F} and {DEG_A_F}"
            )));
        }
        Ok(())
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }
    pub fn u(&self) -> &MPoly {
        &self.u
    }
    pub fn v(&self) -> &MPoly {
        &self.v
    }
    pub fn m(&self) -> &MPoly {
        &self.m
    }
    pub fn n(&self) -> &MPoly {
        &self.n
    }
    pub fn l(&self) -> &MPoly {
        &self.l
    }
    pub fn c(&self) -> &MPoly {
        &self.c
    }
    pub fn f(&self) -> &MPoly {
        &self.f
    }

    /// The model remainder pair `R1 = b² + u·b + v`, `R0 = m·b² + n·b − s⁵`
    /// over `[s, a, b]`.
    pub fn remainder_pair(&self) -> RemainderPair {
        let vs = vars(&["s", "a", "b"]);
        let lift = |p: &MPoly| p.remap(&vs).expect("[s,a] embeds in [s,a,b]");
        let b = MPoly::var(&vs, "b").unwrap();
        let s5 = MPoly::var(&vs, "s").unwrap().pow(5);
        let b2 = b.pow(2);
        let r1 = &(&b2 + &(&lift(&self.u) * &b)) + &lift(&self.v);
        let r0 = &(&(&lift(&self.m) * &b2) + &(&lift(&self.n) * &b)) - &s5;
        RemainderPair { vars: vs, r1, r0 }
    }

    /// `F(s0, ·)` as a polynomial in `a`.
    pub fn fiber_poly(&self, s0: &Rational) -> UPoly<Rational> {
        self.f
            .eval_partial(&[("s", s0.clone())])
            .and_then(|p| p.to_univariate("a"))
            .expect("F lives in [s, a]")
    }
}

/// `(R1, R0)` over `[s, a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderPair {
    pub vars: Arc<VarSet>,
    pub r1: MPoly,
    pub r0: MPoly,
}

impl RemainderPair {
    pub fn eval(&self, s: &Rational, a: &Rational, b: &Rational) -> (Rational, Rational) {
        let pt = [s.clone(), a.clone(), b.clone()];
        (self.r1.eval(&pt), self.r0.eval(&pt))
    }
}

/// Outcome of dividing `P_s(x)` by `x² + a·x + b` over `ℚ[s, a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderCheck {
    pub model: RemainderPair,
    pub r1_division: MPoly,
    pub r0_division: MPoly,
    pub quotient: UPoly<MPoly>,
    pub deg_b_r1: Degree,
    pub deg_b_r0: Degree,
    pub r1_ok: bool,
    pub r0_ok: bool,
}

impl RemainderCheck {
    pub fn passed(&self) -> bool {
        self.r1_ok && self.r0_ok
    }
}

pub fn remainder_crosscheck(sys: &ObstructionSystem) -> Result<RemainderCheck> {
    let model = sys.remainder_pair();
    let vs = model.vars.clone();
    let ps = ps_symbolic_in(&vs)?;
    let d = UPoly::new(vec![
        MPoly::var(&vs, "b")?,
        MPoly::var(&vs, "a")?,
        MPoly::one(&vs),
    ]);
    let (quotient, rem) = ps.divrem(&d)?;
    let zero = MPoly::zero(&vs);
    let r1_division = rem.coeff(1).cloned().unwrap_or_else(|| zero.clone());
    let r0_division = rem.coeff(0).cloned().unwrap_or(zero);
    Ok(RemainderCheck {
        deg_b_r1: r1_division.degree_in("b")?,
        deg_b_r0: r0_division.degree_in("b")?,
        r1_ok: r1_division == model.r1,
        r0_ok: r0_division == model.r0,
        r1_division,
        r0_division,
        quotient,
        model,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultantCheck {
    pub resultant: MPoly,
    pub ok: bool,
    pub deg_s: Degree,
    pub deg_a: Degree,
}

/// `Res_b(R1, R0)` against `F`.
pub fn resultant_crosscheck(sys: &ObstructionSystem) -> Result<ResultantCheck> {
    let pair = sys.remainder_pair();
    let res = resultant_in(&pair.r1, &pair.r0, "b")?.remap(sys.vars())?;
    Ok(ResultantCheck {
        ok: &res == sys.f(),
        deg_s: res.degree_in("s")?,
        deg_a: res.degree_in("a")?,
        resultant: res,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationCheck {
    pub samples: usize,
    /// First sample where `Q_{p,q}(t0) ≠ q²⁰·P_s(t0²/q⁴)`.
    pub witness: Option<Rational>,
}

impl NormalizationCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Evaluates both sides of `Q_{p,q}(t) = q²⁰·P_s(t²/q⁴)`, `s = (p/q)²`.
pub fn normalization_check(params: &CuboidParams, samples: &[Rational]) -> Result<NormalizationCheck> {
    if samples.is_empty() {
        return Err(Error::InvalidConfig("normalization check needs samples"));
    }
    let q = Rational::from_integer(params.q.clone());
    let lhs_poly = qpq_poly(&params.p, &params.q);
    let ps = ps_at(&params.s());
    let q4 = q.pow(4);
    let q20 = q.pow(20);
    let witness = samples
        .iter()
        .find(|t0| lhs_poly.eval(t0) != &q20 * ps.eval(&(*t0 * *t0 / &q4)))
        .cloned();
    Ok(NormalizationCheck {
        samples: samples.len(),
        witness,
    })
}

/// The even quartic `t⁴ + a·q⁴·t² + b·q⁸` and whether it divides `Q_{p,q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticLift {
    pub quartic: UPoly<Rational>,
    pub divides: bool,
    pub remainder: UPoly<Rational>,
    /// Set when `(p, q)` lies outside the cuboid domain; the algebra still
    /// holds there.
    pub outside_domain: bool,
}

pub fn lift_quartic(params: &CuboidParams, a: &Rational, b: &Rational) -> QuarticLift {
    let q = Rational::from_integer(params.q.clone());
    let quartic = UPoly::new(vec![
        b * q.pow(8),
        Rational::zero(),
        a * q.pow(4),
        Rational::zero(),
        Rational::one(),
    ]);
    let (_, remainder) = qpq_poly(&params.p, &params.q)
        .divrem(&quartic)
        .expect("quartic is monic");
    QuarticLift {
        divides: remainder.is_zero(),
        remainder,
        quartic,
        outside_domain: !params.in_domain(),
    }
}
