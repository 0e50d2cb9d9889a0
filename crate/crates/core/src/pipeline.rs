//! The five analysis steps gathered into one serializable report.
//!
//! Rationals are stored as `"p/q"` strings and projective points as
//! `[S, A, Z]` integer strings, so the JSON form round-trips byte for byte.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_int, parse_rational, rat_sqrt, rat_to_fraction, BigInt, Rational};
use crate::degenerate::{factor_pattern_check, DegenerateReport};
use crate::error::{Error, Result};
use crate::fiber::{fiber_poly_report, FiberResult};
use crate::model::{
    lift_quartic, normalization_check, ps_at, qpq_symbolic, qr_identity_holds, remainder_crosscheck,
    resultant_crosscheck, CuboidParams, ObstructionSystem, DEG_A_F, DEG_S_F,
};
use crate::poly::{MPoly, UPoly};
use crate::search::{is_violating, ProjPoint, SearchReport};

/// Genus values of the projective curve as published. This crate does not
/// compute them; they are carried for reference and always marked so.
pub const ARITHMETIC_GENUS: u32 = 120;
pub const GEOMETRIC_GENUS: u32 = 7;

pub const SEARCH_SEMANTICS: &str = "affine points: every s = p/q with max(|p|, q) <= bound, \
     all rational a on each fibre (no bound on a); points at infinity: all, solved exactly. \
     This is not a projective height bound on (S : A : Z).";

/// One named identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Printed in full when the check fails.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: if passed { String::new() } else { detail() },
        }
    }
}

/// Degrees, remainder and resultant cross-checks, and the spot identities.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub deg_s: u32,
    pub deg_a: u32,
    pub deg_b_r1: u32,
    pub deg_b_r0: u32,
    pub r1_ok: bool,
    pub r0_ok: bool,
    pub resultant_ok: bool,
    pub resultant_deg_s: u32,
    pub resultant_deg_a: u32,
    pub checks: Vec<Check>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn deg(p: &MPoly, var: &str) -> u32 {
    p.degree_in(var).ok().and_then(|d| d.finite()).unwrap_or(0)
}

/// Every monomial `p^i q^j t^k` of `Q_{p,q}` has `i + j + 2k = 20`, checked
/// by evaluation at `(λp, λq, λ²t)`.
pub fn weighted_homogeneity_holds(p: &Rational, q: &Rational, t: &Rational, lambda: &Rational) -> bool {
    let qpq = qpq_symbolic();
    let lhs = qpq.eval(&[lambda * p, lambda * q, lambda * lambda * t]);
    lhs == lambda.pow(20) * qpq.eval(&[p.clone(), q.clone(), t.clone()])
}

pub fn run_verify(sys: &ObstructionSystem) -> Result<VerifyOutcome> {
    let mut checks = Vec::new();
    let deg_s = deg(sys.f(), "s");
    let deg_a = deg(sys.f(), "a");
    checks.push(Check::new(
        format!("deg_s F = {DEG_S_F}"),
        deg_s == DEG_S_F,
        || format!("deg_s F = {deg_s}"),
    ));
    checks.push(Check::new(
        format!("deg_a F = {DEG_A_F}"),
        deg_a == DEG_A_F,
        || format!("deg_a F = {deg_a}"),
    ));

    let rc = remainder_crosscheck(sys)?;
    checks.push(Check::new("R1 by division equals R1 model", rc.r1_ok, || {
        format!("R1_div - R1_model = {}", &rc.r1_division - &rc.model.r1)
    }));
    checks.push(Check::new("R0 by division equals R0 model", rc.r0_ok, || {
        format!("R0_div - R0_model = {}", &rc.r0_division - &rc.model.r0)
    }));

    let res = resultant_crosscheck(sys)?;
    checks.push(Check::new("Res_b(R1, R0) equals F", res.ok, || {
        format!("Res_b(R1, R0) - F = {}", &res.resultant - sys.f())
    }));

    let f1 = sys.fiber_poly(&Rational::one());
    let f1_expected = UPoly::from_ints(&[0, 1])
        .pow(4)
        .mul(&UPoly::from_ints(&[-2, 1]).pow(6))
        .neg();
    checks.push(Check::new("F(1,a) = -a^4*(a - 2)^6", f1 == f1_expected, || {
        format!("F(1,a) = {}", f1.display_in("a"))
    }));

    let p1 = ps_at(&Rational::one());
    let p1_expected = UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[1, 1]).pow(4));
    checks.push(Check::new(
        "P_1(x) = (x - 1)*(x + 1)^4",
        p1 == p1_expected,
        || format!("P_1(x) = {}", p1.display_in("x")),
    ));

    let qr_ok = qr_identity_holds();
    checks.push(Check::new("Q_r(u) = P_s(u^2) with s = r^2", qr_ok, || {
        "symbolic difference is nonzero".to_string()
    }));

    let samples: Vec<Rational> = [-3, -1, 0, 2, 5].map(|k| Rational::from_integer(k.into())).into();
    let mut norm_ok = true;
    let mut norm_detail = String::new();
    for (p, q) in [(1, 2), (2, 3), (3, 5)] {
        let params = CuboidParams::new(p.into(), q.into())?;
        if let Some(t0) = normalization_check(&params, &samples)?.witness {
            norm_ok = false;
            norm_detail = format!("(p, q) = ({p}, {q}), t = {t0}");
            break;
        }
    }
    checks.push(Check::new(
        "Q_{p,q}(t) = q^20*P_s(t^2/q^4) on samples",
        norm_ok,
        || norm_detail,
    ));

    let spots = [((1, 2), 3, 2), ((2, 3), -1, 5), ((5, 7), 4, -3)];
    let weighted_ok = spots.iter().all(|&((p, q), t, l)| {
        let r = |k: i64| Rational::from_integer(k.into());
        weighted_homogeneity_holds(&r(p), &r(q), &r(t), &r(l))
    });
    checks.push(Check::new(
        "Q_{p,q} weighted homogeneous of degree 20",
        weighted_ok,
        || "Q(lp, lq, l^2 t) != l^20 Q(p, q, t) at a spot value".to_string(),
    ));

    Ok(VerifyOutcome {
        deg_s,
        deg_a,
        deg_b_r1: rc.deg_b_r1.finite().unwrap_or(0),
        deg_b_r0: rc.deg_b_r0.finite().unwrap_or(0),
        r1_ok: rc.r1_ok,
        r0_ok: rc.r0_ok,
        resultant_ok: res.ok,
        resultant_deg_s: res.deg_s.finite().unwrap_or(0),
        resultant_deg_a: res.deg_a.finite().unwrap_or(0),
        checks,
    })
}

fn frac(x: &Rational) -> String {
    rat_to_fraction(x)
}

fn pair(x: &(Rational, Rational)) -> [String; 2] {
    [frac(&x.0), frac(&x.1)]
}

fn point(p: &ProjPoint) -> [String; 3] {
    p.coords().map(|c| c.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step1 {
    pub deg_s: u32,
    pub deg_a: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step2 {
    pub r1_ok: bool,
    pub r0_ok: bool,
    pub resultant_ok: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub a: String,
    pub b: String,
    pub r1_ok: bool,
    pub r0_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateHitEntry {
    pub a: String,
    pub c_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub s: String,
    /// `[root, multiplicity]` pairs.
    pub roots: Vec<(String, u32)>,
    pub witnesses: Vec<WitnessEntry>,
    pub degenerate_hits: Vec<DegenerateHitEntry>,
    pub leading_unit: String,
    pub monic: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step4 {
    pub res_degree: u32,
    pub linear_factors: Vec<(String, u32)>,
    pub cofactor_degree: u32,
    pub cofactor_has_rational_roots: bool,
    pub locus: Vec<[String; 2]>,
    pub factor_pattern_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus {
    pub arithmetic: u32,
    pub geometric: u32,
    pub computed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step5 {
    pub bound: String,
    pub semantics: String,
    pub curve_degree: u32,
    pub points: Vec<[String; 3]>,
    pub affine: Vec<[String; 2]>,
    pub infinity: Vec<[String; 3]>,
    pub singular: Vec<[String; 3]>,
    pub violating: Vec<[String; 2]>,
    pub genus: Genus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub conditional: bool,
    pub text: String,
}

/// Any subset of the five steps plus the verdict. Reports produced by
/// separate commands merge step by step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step1: Option<Step1>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step2: Option<Step2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step3: Option<Vec<FiberEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step4: Option<Step4>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step5: Option<Step5>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl PipelineReport {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "report JSON",
            input: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Fills each step missing here from `other`; steps already present win.
    pub fn merge(&mut self, other: PipelineReport) {
        fn fill<T>(slot: &mut Option<T>, value: Option<T>) {
            if slot.is_none() {
                *slot = value;
            }
        }
        fill(&mut self.step1, other.step1);
        fill(&mut self.step2, other.step2);
        fill(&mut self.step3, other.step3);
        fill(&mut self.step4, other.step4);
        fill(&mut self.step5, other.step5);
        fill(&mut self.verdict, other.verdict);
    }

    pub fn set_verify(&mut self, v: &VerifyOutcome) {
        self.step1 = Some(Step1 {
            deg_s: v.deg_s,
            deg_a: v.deg_a,
        });
        self.step2 = Some(Step2 {
            r1_ok: v.r1_ok,
            r0_ok: v.r0_ok,
            resultant_ok: v.resultant_ok,
            checks: v.checks.clone(),
        });
    }

    pub fn set_fibers(&mut self, sys: &ObstructionSystem, fibers: &[FiberResult]) -> Result<()> {
        let entries = fibers
            .iter()
            .map(|r| {
                let poly = fiber_poly_report(sys, &r.s0)?;
                Ok(FiberEntry {
                    s: frac(&r.s0),
                    roots: r.roots.iter().map(|(x, k)| (frac(x), *k)).collect(),
                    witnesses: r
                        .derived
                        .iter()
                        .map(|d| WitnessEntry {
                            a: frac(&d.a0),
                            b: frac(&d.b0),
                            r1_ok: d.r1_ok,
                            r0_ok: d.r0_ok,
                        })
                        .collect(),
                    degenerate_hits: r
                        .degenerate_hits
                        .iter()
                        .map(|h| DegenerateHitEntry {
                            a: frac(&h.a0),
                            c_zero: h.c_zero,
                        })
                        .collect(),
                    leading_unit: frac(&poly.unit),
                    monic: format!("{}", poly.monic.display_in("a")),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.step3 = Some(entries);
        Ok(())
    }

    pub fn set_degenerate(&mut self, sys: &ObstructionSystem, d: &DegenerateReport) -> Result<()> {
        self.step4 = Some(Step4 {
            res_degree: d.resultant_degree,
            linear_factors: d.linear_factors.iter().map(|(x, k)| (frac(x), *k)).collect(),
            cofactor_degree: d.cofactor_degree,
            cofactor_has_rational_roots: d.cofactor_has_rational_roots,
            locus: d.locus_points.iter().map(pair).collect(),
            factor_pattern_ok: factor_pattern_check(sys)?.passed(),
        });
        Ok(())
    }

    pub fn set_search(&mut self, s: &SearchReport) {
        self.step5 = Some(Step5 {
            bound: s.bound.to_string(),
            semantics: SEARCH_SEMANTICS.to_string(),
            curve_degree: s.curve_degree,
            points: s.points.iter().map(point).collect(),
            affine: s.affine.iter().map(pair).collect(),
            infinity: s.infinity.iter().map(point).collect(),
            singular: s.singular_points().map(point).collect(),
            violating: s.violating.iter().map(pair).collect(),
            genus: Genus {
                arithmetic: ARITHMETIC_GENUS,
                geometric: GEOMETRIC_GENUS,
                computed: false,
            },
        });
    }

    /// Steps 1, 2, 4 and 5 are needed for a verdict.
    pub fn missing_steps(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.step1.is_none() {
            out.push("step1");
        }
        if self.step2.is_none() {
            out.push("step2");
        }
        if self.step4.is_none() {
            out.push("step4");
        }
        if self.step5.is_none() {
            out.push("step5");
        }
        out
    }

    /// Violating affine points of step 5, parsed back into rationals.
    pub fn violating_points(&self) -> Result<Vec<(Rational, Rational)>> {
        let Some(s5) = &self.step5 else {
            return Ok(Vec::new());
        };
        s5.violating
            .iter()
            .map(|[s, a]| Ok((parse_rational(s)?, parse_rational(a)?)))
            .collect()
    }
}

/// What a violating point `(s, a)` would imply, spelled out.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationWitness {
    pub s: Rational,
    pub a: Rational,
    /// `C/L`, when `L(s, a) ≠ 0`.
    pub b: Option<Rational>,
    pub on_curve: bool,
    /// `(p, q, quartic, divides)` when `s = (p/q)²`.
    pub lift: Option<(BigInt, BigInt, UPoly<Rational>, bool)>,
}

pub fn explain_violation(sys: &ObstructionSystem, s: &Rational, a: &Rational) -> ViolationWitness {
    let pt = [s.clone(), a.clone()];
    let l = sys.l().eval(&pt);
    let b = (!l.is_zero()).then(|| sys.c().eval(&pt) / l);
    let on_curve = sys.f().eval(&pt).is_zero();
    let lift = match (&b, rat_sqrt(s)) {
        (Some(b), Some(r)) => {
            let (p, q) = (r.numer().clone(), r.denom().clone());
            CuboidParams::any(p.clone(), q.clone()).ok().map(|params| {
                let l = lift_quartic(&params, a, b);
                (p, q, l.quartic, l.divides)
            })
        }
        _ => None,
    };
    ViolationWitness {
        s: s.clone(),
        a: a.clone(),
        b,
        on_curve,
        lift,
    }
}

/// The closing paragraph. Always conditional: the search bounds `s`, and
/// nothing here proves the rational point list complete.
pub fn verdict(sys: &ObstructionSystem, report: &PipelineReport) -> Result<Verdict> {
    let missing = report.missing_steps();
    if !missing.is_empty() {
        return Err(Error::InvalidConfig(
            "report is missing steps needed for a verdict",
        ));
    }
    let s5 = report.step5.as_ref().unwrap();
    let s4 = report.step4.as_ref().unwrap();
    let bound = parse_int(&s5.bound)?;
    let violating = report.violating_points()?;
    let locus_clear = s4
        .locus
        .iter()
        .filter_map(|[s, _]| parse_rational(s).ok())
        .all(|s| !is_violating(&s));
    let text = if violating.is_empty() {
        let locus = if locus_clear {
            "The degenerate locus L = C = 0 has no rational point with s > 0, s != 1."
        } else {
            "WARNING: the degenerate locus reports a rational point with s > 0, s != 1."
        };
        format!(
            "No violating point up to bound {bound}. For every rational s > 0, s != 1 of height \
             at most {bound}, P_s has no 2+3 factorization over Q, so the corresponding Q_{{p,q}} \
             has no even quartic factor over Q. {locus} Extending this to all s is conditional on \
             completeness of the listed rational points of F = 0; no unconditional claim is made."
        )
    } else {
        let mut lines = vec![format!(
            "Violating point(s) found up to bound {bound}; each would give a candidate 2+3 \
             factorization parameter. Conclusion conditional on completeness does not apply."
        )];
        for (s, a) in &violating {
            let w = explain_violation(sys, s, a);
            let b =
                w.b.as_ref()
                    .map_or("undetermined (L = 0)".to_string(), |b| b.to_string());
            let mut line = format!("(s, a, b) = ({}, {}, {b}); F(s, a) = 0: {}", w.s, w.a, w.on_curve);
            match &w.lift {
                Some((p, q, quartic, divides)) => line.push_str(&format!(
                    "; lifted quartic {} for (p, q) = ({p}, {q}); divides Q_{{p,q}}: {divides}",
                    quartic.display_in("t")
                )),
                None => line.push_str("; s is not a rational square, no quartic lift"),
            }
            lines.push(line);
        }
        lines.join("\n")
    };
    Ok(Verdict {
        conditional: true,
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn verify_passes() {
        let v = run_verify(ObstructionSystem::shared()).unwrap();
        assert!(v.passed(), "{:?}", v.first_failure());
        assert_eq!((v.deg_b_r1, v.deg_b_r0), (2, 2));
    }

    #[test]
    fn weighted_homogeneity_spot() {
        assert!(weighted_homogeneity_holds(
            &rat_int(1),
            &rat_int(2),
            &rat(1, 3),
            &rat(-2, 5)
        ));
    }

    #[test]
    fn violation_on_a_square_fibre_names_the_lift() {
        let sys = ObstructionSystem::shared();
        let w = explain_violation(sys, &rat_int(4), &rat_int(1));
        assert!(!w.on_curve);
        let (p, q, quartic, divides) = w.lift.unwrap();
        assert_eq!((p, q), (2.into(), 1.into()));
        assert_eq!(quartic.degree(), 4);
        assert!(!divides);
    }

    #[test]
    fn merge_keeps_existing_steps() {
        let mut a = PipelineReport {
            step1: Some(Step1 { deg_s: 16, deg_a: 10 }),
            ..Default::default()
        };
        a.merge(PipelineReport {
            step1: Some(Step1 { deg_s: 0, deg_a: 0 }),
            verdict: Some(Verdict {
                conditional: true,
                text: "x".into(),
            }),
            ..Default::default()
        });
        assert_eq!(a.step1.unwrap().deg_s, 16);
        assert!(a.verdict.is_some());
    }
}
