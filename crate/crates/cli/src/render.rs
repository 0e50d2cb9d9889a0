//! Text transcripts in a banner layout, one block per pipeline step.

use std::fmt::Write;

use cuboid_core::arith::parse_rational;
use cuboid_core::degenerate::{DegenerateReport, FactorPattern, FactorShape};
use cuboid_core::fiber::{fiber_poly_report, FiberResult};
use cuboid_core::pipeline::{
    PipelineReport, VerifyOutcome, ARITHMETIC_GENUS, GEOMETRIC_GENUS, SEARCH_SEMANTICS,
};
use cuboid_core::{ObstructionSystem, ProjPoint, RootList, SearchReport};

const RULE: &str = "-------------------------------------------------------------------------------";

pub const STEP1: &str = "Step 1. Define u,v,m,n,L,C,F in Q[s,a] (closed-form, no Resultant)";
pub const STEP2: &str = "Step 2 (cross-check). Compute remainder by division in Q[s,a,b][x] and verify\n\
                         u,v,m,n and F=Res_b(R1,R0)";
pub const STEP3: &str = "Step 3. Fiber tests: specialize s=s0 and check rational roots in a";
pub const STEP4: &str = "Step 4. Degenerate locus: solve L(s,a)=0 and C(s,a)=0 via resultant in s";
pub const STEP5: &str = "Step 5. Projective curve defined by F(s,a)=0: singularities and genus";

pub fn banner(out: &mut String, title: &str) {
    let _ = write!(out, "\n{RULE}\n{title}\n{RULE}\n\n");
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn verify(v: &VerifyOutcome) -> String {
    let mut out = String::new();
    banner(&mut out, STEP1);
    let _ = writeln!(out, "deg_s F = {}", v.deg_s);
    let _ = writeln!(out, "deg_a F = {}", v.deg_a);
    banner(&mut out, STEP2);
    let _ = writeln!(out, "deg_b R1 (division) = {}", v.deg_b_r1);
    let _ = writeln!(out, "deg_b R0 (division) = {}", v.deg_b_r0);
    let _ = writeln!(out, "Check R1_div == R1_model ?   {}", yes_no(v.r1_ok));
    let _ = writeln!(out, "Check R0_div == R0_model ?   {}", yes_no(v.r0_ok));
    let _ = writeln!(out, "Check Resultant == F ?       {}", yes_no(v.resultant_ok));
    let _ = writeln!(
        out,
        "deg_s(Resultant) = {}  ; deg_a(Resultant) = {}",
        v.resultant_deg_s, v.resultant_deg_a
    );
    out.push_str("\nIdentity checks:\n");
    for c in &v.checks {
        let _ = writeln!(out, "[{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name);
    }
    if let Some(c) = v.first_failure() {
        let _ = writeln!(out, "\nFirst failing identity: {}\n{}", c.name, c.detail);
    }
    out
}

pub fn fibers(sys: &ObstructionSystem, results: &[FiberResult]) -> String {
    let mut out = String::new();
    banner(&mut out, STEP3);
    for r in results {
        let _ = writeln!(out, "\n--- Fiber s = {} ---", r.s0);
        match fiber_poly_report(sys, &r.s0) {
            Ok(p) => {
                let _ = writeln!(out, "Leading unit of F_s0: {}", p.unit);
                let _ = writeln!(out, "Monic F_s0: {}", p.monic.display_in("a"));
            }
            Err(_) => out.push_str("F_s0 vanishes identically\n"),
        }
        let _ = writeln!(out, "Rational roots in a: {}", r.roots);
        if r.roots.is_empty() {
            continue;
        }
        out.push_str("Derived (a,b) solutions (when L!=0):\n");
        let mut lines: Vec<(_, String)> = r
            .derived
            .iter()
            .map(|d| {
                (
                    &d.a0,
                    format!("<{}, {}, {}, {}>", d.a0, d.b0, yes_no(d.r1_ok), yes_no(d.r0_ok)),
                )
            })
            .collect();
        lines.extend(r.degenerate_hits.iter().map(|h| {
            (
                &h.a0,
                format!("<{}, \"L=0\", \"C=0 ?\", {}>", h.a0, yes_no(h.c_zero)),
            )
        }));
        lines.sort_by(|x, y| x.0.cmp(y.0));
        for (_, l) in lines {
            let _ = writeln!(out, "{l}");
        }
        for w in r.all_witnesses() {
            let _ = writeln!(
                out,
                "2+3 factorization of P_s0: ({}) * ({})",
                w.quadratic().display_in("x"),
                w.cubic.display_in("x")
            );
        }
    }
    out
}

fn shape(out: &mut String, name: &str, s: &FactorShape) {
    let cofactor = s
        .cofactor
        .monic()
        .map(|(_, m)| m)
        .unwrap_or_else(|_| s.cofactor.clone());
    let _ = writeln!(out, "Shape of {name}(s,a0): [");
    let _ = writeln!(out, "    <s - 1, {}>,", s.mult_at_one);
    let _ = writeln!(out, "    <s + 1, {}>,", s.mult_at_minus_one);
    let _ = writeln!(
        out,
        "    cofactor {} (degree {}, rational roots: {})",
        cofactor.display_in("s"),
        s.cofactor.degree(),
        roots_or_none(&s.cofactor_roots)
    );
    out.push_str("]\n");
}

fn roots_or_none(r: &RootList) -> String {
    if r.is_empty() {
        "none".to_string()
    } else {
        r.to_string()
    }
}

pub fn degenerate(d: &DegenerateReport, pattern: &FactorPattern) -> String {
    let mut out = String::new();
    banner(&mut out, STEP4);
    let _ = writeln!(
        out,
        "Resultant Res_s(L,C) as polynomial in a has degree: {}",
        d.resultant_degree
    );
    let _ = writeln!(
        out,
        "Rational a-roots forced by Res_s(L,C)=0 (linear factors only): {}",
        d.linear_factors
    );
    let monic = d
        .cofactor
        .monic()
        .map(|(_, m)| m)
        .unwrap_or_else(|_| d.cofactor.clone());
    let _ = writeln!(
        out,
        "Cofactor of degree {}, rational roots: {}",
        d.cofactor_degree,
        if d.cofactor_has_rational_roots {
            "present"
        } else {
            "none"
        }
    );
    let _ = writeln!(out, "Cofactor (monic): {}", monic.display_in("a"));
    for g in &d.gcds {
        let _ = writeln!(out, "\n--- Degenerate analysis at a = {} ---", g.a0);
        let _ = writeln!(out, "gcd_s(L,C) = {}", g.gcd.display_in("s"));
        let _ = writeln!(out, "Roots of gcd in s (rational): {}", g.roots);
    }
    if !d.gcds.is_empty() {
        shape(&mut out, "L", &pattern.l);
        shape(&mut out, "C", &pattern.c);
    }
    let locus: Vec<String> = d
        .locus_points
        .iter()
        .map(|(s, a)| format!("<{s}, {a}>"))
        .collect();
    let _ = writeln!(out, "\nDegenerate locus (s, a): {{ {} }}", locus.join(", "));
    out
}

fn point_set(points: &[&ProjPoint]) -> String {
    if points.is_empty() {
        return "{@ @}".to_string();
    }
    let parts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    format!("{{@ {} @}}", parts.join(", "))
}

pub fn search(s: &SearchReport) -> String {
    let mut out = String::new();
    banner(&mut out, STEP5);
    let _ = writeln!(out, "Projective curve defined. Degree = {}", s.curve_degree);
    let _ = writeln!(
        out,
        "Arithmetic genus = {ARITHMETIC_GENUS} (published value, not computed)"
    );
    let _ = writeln!(
        out,
        "Geometric genus  = {GEOMETRIC_GENUS} (published value, not computed)"
    );
    let _ = writeln!(out, "Search semantics: {SEARCH_SEMANTICS}");
    let _ = writeln!(
        out,
        "Computing rational points on Cproj with bound H = {}",
        s.bound
    );
    let all: Vec<&ProjPoint> = s.points.iter().collect();
    let _ = writeln!(out, "\nRational Points found on Cproj:\n{}", point_set(&all));
    let sing: Vec<&ProjPoint> = s.singular_points().collect();
    let _ = writeln!(out, "Singular points among them:\n{}", point_set(&sing));
    if !s.zero_fibers.is_empty() {
        let zs: Vec<String> = s.zero_fibers.iter().map(|z| z.to_string()).collect();
        let _ = writeln!(out, "Fibres with F(s0,a) identically zero: {}", zs.join(", "));
    }
    out.push_str("\nInterpretation:\n");
    for p in &s.points {
        match p.to_affine() {
            Some((sv, av)) => {
                let _ = writeln!(out, "Affine solution (s, a) = <{sv}, {av}>");
            }
            None => {
                let _ = writeln!(out, "Point at infinity: {p}");
            }
        }
    }
    if s.violating.is_empty() {
        out.push_str("\nViolating points (s > 0, s != 1): none\n");
    } else {
        out.push_str("\nViolating points (s > 0, s != 1):\n");
        for (sv, av) in &s.violating {
            let _ = writeln!(out, "<{sv}, {av}>");
        }
    }
    out
}

/// `"4/1"` back to `4`; anything unparsable is shown as stored.
fn show(fraction: &str) -> String {
    parse_rational(fraction).map_or_else(|_| fraction.to_string(), |x| x.to_string())
}

/// Summary of a (possibly merged) report; depends only on the report, so
/// text rendered from JSON matches text rendered from a fresh run.
pub fn report(r: &PipelineReport) -> String {
    let mut out = String::new();
    out.push_str("Pipeline report\n");
    if let Some(s1) = &r.step1 {
        let _ = writeln!(out, "Step 1: deg_s F = {}, deg_a F = {}", s1.deg_s, s1.deg_a);
    }
    if let Some(s2) = &r.step2 {
        let _ = writeln!(
            out,
            "Step 2: R1 model {}, R0 model {}, Res_b(R1,R0) == F {}",
            yes_no(s2.r1_ok),
            yes_no(s2.r0_ok),
            yes_no(s2.resultant_ok)
        );
        for c in s2.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "  FAIL {}: {}", c.name, c.detail);
        }
    }
    if let Some(s3) = &r.step3 {
        out.push_str("Step 3:\n");
        for f in s3 {
            let roots: Vec<String> = f
                .roots
                .iter()
                .map(|(x, k)| format!("<{}, {k}>", show(x)))
                .collect();
            let _ = writeln!(
                out,
                "  s = {}: roots [{}], witnesses {}, degenerate hits {}",
                show(&f.s),
                roots.join(", "),
                f.witnesses.len(),
                f.degenerate_hits.len()
            );
        }
    }
    if let Some(s4) = &r.step4 {
        let lin: Vec<String> = s4
            .linear_factors
            .iter()
            .map(|(x, k)| format!("<{}, {k}>", show(x)))
            .collect();
        let locus: Vec<String> = s4
            .locus
            .iter()
            .map(|[s, a]| format!("<{}, {}>", show(s), show(a)))
            .collect();
        let _ = writeln!(
            out,
            "Step 4: resultant degree {}, linear factors [{}], cofactor degree {} (rational roots: {}), locus {{ {} }}",
            s4.res_degree,
            lin.join(", "),
            s4.cofactor_degree,
            if s4.cofactor_has_rational_roots { "present" } else { "none" },
            locus.join(", ")
        );
    }
    if let Some(s5) = &r.step5 {
        let _ = writeln!(
            out,
            "Step 5: bound {}, degree {}, {} points ({} affine, {} at infinity, {} singular), {} violating",
            s5.bound,
            s5.curve_degree,
            s5.points.len(),
            s5.affine.len(),
            s5.infinity.len(),
            s5.singular.len(),
            s5.violating.len()
        );
        let _ = writeln!(
            out,
            "  genus: arithmetic {}, geometric {} ({})",
            s5.genus.arithmetic,
            s5.genus.geometric,
            if s5.genus.computed {
                "computed"
            } else {
                "published values, not computed"
            }
        );
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(
            out,
            "\nVerdict ({}):\n{}",
            if v.conditional {
                "conditional"
            } else {
                "unconditional"
            },
            v.text
        );
    }
    out
}
