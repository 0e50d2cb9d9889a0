//! `cuboid`: runs the 2+3 factorization obstruction pipeline for the second
//! cuboid quintic and prints a transcript or a JSON report.
//!
//! Exit codes: 0 success, 1 identity check failed, 2 usage or input error,
//! 3 violating point found.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cuboid_core::arith::{parse_int, parse_rational};
use cuboid_core::degenerate::factor_pattern_check;
use cuboid_core::pipeline::{run_verify, verdict};
use cuboid_core::{
    analyze_degenerate, fiber, run_search, ObstructionSystem, PipelineReport, Rational, SearchConfig,
};

const WORKERS_ENV: &str = "CUBOID_WORKERS";

#[derive(Parser)]
#[command(
    name = "cuboid",
    version,
    about = "Exact 2+3 factorization obstruction pipeline"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Degree checks, remainder and resultant cross-checks, spot identities.
    Verify {
        /// Replace u by u + 1 before checking (fault injection).
        #[arg(long, hide = true)]
        tamper_u: bool,
    },
    /// Specialize at s = s0 and look for rational roots in a.
    Fiber {
        /// Fibre parameter, e.g. 4/9; repeatable. Defaults to 1, 4, 4/9, 2.
        #[arg(long = "s", value_parser = rational_arg, allow_hyphen_values = true)]
        s: Vec<Rational>,
    },
    /// Resultant in s of L and C, and the rational points of L = C = 0.
    Degenerate,
    /// Rational points on the projective closure of F = 0.
    Search {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Conditional verdict from saved reports, or from a fresh full run.
    Report {
        /// JSON report to merge; repeatable. Without it every step is re-run.
        #[arg(long)]
        from: Vec<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Height bound on s.
    #[arg(long, default_value = "100")]
    bound: String,
    /// Worker threads. Defaults to $CUBOID_WORKERS, then available parallelism.
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig, Failure> {
        let bound = parse_int(&self.bound).map_err(Failure::input)?;
        let workers = self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        SearchConfig::new(bound, workers).map_err(Failure::input)
    }
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Output paired with the exit status it implies.
struct Outcome {
    text: String,
    code: u8,
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            message: e.to_string(),
            code: 2,
        }
    }

    fn identity(e: impl std::fmt::Display) -> Self {
        Failure {
            message: e.to_string(),
            code: 1,
        }
    }
}

fn default_fibers() -> Vec<Rational> {
    ["1", "4", "4/9", "2"]
        .iter()
        .map(|s| parse_rational(s).expect("static"))
        .collect()
}

fn emit(format: Format, report: &PipelineReport, text: String, code: u8) -> Outcome {
    Outcome {
        text: match format {
            Format::Text => text,
            Format::Json => report.to_json(),
        },
        code,
    }
}

fn cmd_verify(format: Format, tamper_u: bool) -> Result<Outcome, Failure> {
    let tampered;
    let sys = if tamper_u {
        let base = ObstructionSystem::shared();
        let one = cuboid_core::MPoly::one(base.vars());
        tampered = ObstructionSystem::from_parts(
            base.u() + &one,
            base.v().clone(),
            base.m().clone(),
            base.n().clone(),
        )
        .map_err(Failure::identity)?;
        &tampered
    } else {
        ObstructionSystem::shared()
    };
    let v = run_verify(sys).map_err(Failure::identity)?;
    let mut report = PipelineReport::default();
    report.set_verify(&v);
    Ok(emit(
        format,
        &report,
        render::verify(&v),
        if v.passed() { 0 } else { 1 },
    ))
}

fn cmd_fiber(format: Format, s: Vec<Rational>) -> Result<Outcome, Failure> {
    let sys = ObstructionSystem::shared();
    let values = if s.is_empty() { default_fibers() } else { s };
    let results: Vec<_> = values.iter().map(|s0| fiber(sys, s0)).collect();
    let mut report = PipelineReport::default();
    report.set_fibers(sys, &results).map_err(Failure::identity)?;
    Ok(emit(format, &report, render::fibers(sys, &results), 0))
}

/// Whether the degenerate analysis reproduces the published classification.
fn degenerate_matches(d: &cuboid_core::DegenerateReport, pattern_ok: bool) -> bool {
    let two = parse_rational("2").unwrap();
    let locus =
        [("-1", "2"), ("1", "2")].map(|(s, a)| (parse_rational(s).unwrap(), parse_rational(a).unwrap()));
    d.resultant_degree == 27
        && d.linear_factors.as_slice() == [(two, 6)]
        && d.cofactor_degree == 21
        && !d.cofactor_has_rational_roots
        && d.locus_points == locus
        && pattern_ok
}

fn cmd_degenerate(format: Format) -> Result<Outcome, Failure> {
    let sys = ObstructionSystem::shared();
    let d = analyze_degenerate(sys).map_err(Failure::identity)?;
    let pattern = factor_pattern_check(sys).map_err(Failure::identity)?;
    let mut report = PipelineReport::default();
    report.set_degenerate(sys, &d).map_err(Failure::identity)?;
    let code = if degenerate_matches(&d, pattern.passed()) {
        0
    } else {
        1
    };
    Ok(emit(format, &report, render::degenerate(&d, &pattern), code))
}

fn cmd_search(format: Format, args: &SearchArgs) -> Result<Outcome, Failure> {
    let cfg = args.config()?;
    let sys = ObstructionSystem::shared();
    let s = run_search(sys, &cfg).map_err(Failure::identity)?;
    let mut report = PipelineReport::default();
    report.set_search(&s);
    let code = if s.violating.is_empty() { 0 } else { 3 };
    Ok(emit(format, &report, render::search(&s), code))
}

fn cmd_report(format: Format, from: &[PathBuf], args: &SearchArgs) -> Result<Outcome, Failure> {
    let sys = ObstructionSystem::shared();
    let mut report = PipelineReport::default();
    if from.is_empty() {
        let v = run_verify(sys).map_err(Failure::identity)?;
        report.set_verify(&v);
        let fibers: Vec<_> = default_fibers().iter().map(|s0| fiber(sys, s0)).collect();
        report.set_fibers(sys, &fibers).map_err(Failure::identity)?;
        let d = analyze_degenerate(sys).map_err(Failure::identity)?;
        report.set_degenerate(sys, &d).map_err(Failure::identity)?;
        report.set_search(&run_search(sys, &args.config()?).map_err(Failure::identity)?);
    } else {
        for path in from {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            let part = PipelineReport::from_json(&text)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            report.merge(part);
        }
        let missing = report.missing_steps();
        if !missing.is_empty() {
            return Err(Failure::input(format!("missing inputs: {}", missing.join(", "))));
        }
    }
    report.verdict = Some(verdict(sys, &report).map_err(Failure::input)?);
    let failed_identity = report
        .step2
        .as_ref()
        .is_some_and(|s| !(s.r1_ok && s.r0_ok && s.resultant_ok));
    let violating = report.violating_points().map_err(Failure::input)?;
    let code = match (failed_identity, violating.is_empty()) {
        (true, _) => 1,
        (false, false) => 3,
        (false, true) => 0,
    };
    let text = render::report(&report);
    Ok(emit(format, &report, text, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { tamper_u } => cmd_verify(cli.format, *tamper_u),
        Command::Fiber { s } => cmd_fiber(cli.format, s.clone()),
        Command::Degenerate => cmd_degenerate(cli.format),
        Command::Search { search } => cmd_search(cli.format, search),
        Command::Report { from, search } => cmd_report(cli.format, from, search),
    };
    match result {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
