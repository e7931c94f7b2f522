//! `tiling`: generate, verify and render noncongruent unit-area triangle
//! tilings.
//!
//! Exit codes: 0 all audits pass, 1 audit failure, 2 generation failure
//! (including an exhausted step budget), 3 I/O or parse failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tiling_core::certificate::{CertificateError, CertifiedAudit};
use tiling_core::svg::{render_certificate, render_svg};
use tiling_core::verification::AuditReport;
use tiling_core::{audit_state, Certificate, RunParams, RunStatus, TilingState};

const EXIT_AUDIT: u8 = 1;
const EXIT_GENERATION: u8 = 2;
const EXIT_IO: u8 = 3;

const DEFAULT_SAMPLES: usize = 100_000;

#[derive(Parser)]
#[command(name = "tiling", version, about = "Plane tilings by pairwise noncongruent unit-area triangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a tiling until a disk is covered, audit it and write a certificate.
    Generate(GenerateArgs),
    /// Re-audit a certificate.
    Verify(VerifyArgs),
    /// Render a certificate as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop once every cone is farther than this from the origin.
    #[arg(long, default_value_t = 30.0)]
    radius: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
    /// Potential-triangle lookahead depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Congruence separation margin.
    #[arg(long, default_value_t = 1e-6)]
    margin: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 64)]
    max_attempts: u32,
    /// Certificate path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Half-width of the SVG viewport (defaults to the radius).
    #[arg(long)]
    viewport: Option<f64>,
    /// Monte Carlo coverage samples.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    audit_seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Coverage samples (defaults to the certificate's own audit settings).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    audit_seed: Option<u64>,
    /// Override the radius the certificate claims to cover.
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    viewport: Option<f64>,
}

fn summarize(report: &AuditReport) {
    eprintln!(
        "triangles {} cones {} | max |area-1| {:.3e} | max perimeter {:.4} (bound {:.4}) | min separation {} | overlaps {} | coverage misses {}/{} | area accounting {:.3e}",
        report.triangle_count,
        report.cone_count,
        report.area_max_error,
        report.perimeter_max,
        report.perimeter_bound,
        report
            .min_congruence_separation
            .map_or("n/a".to_owned(), |d| format!("{d:.3e}")),
        report.overlap_pairs.len(),
        report.coverage_misses,
        report.coverage_samples,
        report.area_accounting_error,
    );
    let failures = report.checks.failures();
    if failures.is_empty() {
        eprintln!("audit: pass");
    } else {
        eprintln!("audit: FAIL ({})", failures.join(", "));
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), ExitCode> {
    fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })
}

fn generate(args: GenerateArgs) -> Result<(), ExitCode> {
    let params = RunParams {
        seed: args.seed,
        radius: args.radius,
        max_steps: args.max_steps,
        depth: args.depth,
        margin: args.margin,
        tol: args.tol,
        max_attempts: args.max_attempts,
    };
    let fail = |e: &dyn std::fmt::Display| {
        eprintln!("error: generation failed: {e}");
        ExitCode::from(EXIT_GENERATION)
    };
    let mut state = TilingState::init(params).map_err(|e| fail(&e))?;
    let status = state.run().map_err(|e| fail(&e))?;
    let report = audit_state(&state, args.samples, args.audit_seed);
    summarize(&report);
    let passed = report.passed();
    let cert = Certificate::from_state(
        &state,
        status,
        Some(CertifiedAudit {
            samples: args.samples,
            seed: args.audit_seed,
            report,
        }),
    );
    let json = cert.to_json();
    match &args.out {
        Some(path) => write_file(path, &json)?,
        None => print!("{json}"),
    }
    if let Some(path) = &args.svg {
        let cones: Vec<_> = state.cones().copied().collect();
        let svg = render_svg(state.tiles(), &cones, args.viewport.unwrap_or(args.radius));
        write_file(path, &svg)?;
    }
    if status == RunStatus::StepBudgetExhausted {
        eprintln!("error: step budget exhausted after {} steps (step_budget_exhausted)", state.step_count());
        return Err(ExitCode::from(EXIT_GENERATION));
    }
    if !passed {
        return Err(ExitCode::from(EXIT_AUDIT));
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<Certificate, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })?;
    Certificate::from_json(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })
}

fn verify(args: VerifyArgs) -> Result<(), ExitCode> {
    let cert = load(&args.input)?;
    let recorded = cert.audit.as_ref();
    let samples = args
        .samples
        .or(recorded.map(|a| a.samples))
        .unwrap_or(DEFAULT_SAMPLES);
    let seed = args.audit_seed.or(recorded.map(|a| a.seed)).unwrap_or(0);
    let mut config = cert.audit_config(samples, seed);
    if let Some(r) = args.radius {
        config.radius = r;
    }
    if let Some(m) = args.margin {
        config.margin = m;
    }
    if let Some(t) = args.tol {
        config.tol = t;
    }
    match cert.verify(&config) {
        Ok(report) => {
            summarize(&report);
            if report.passed() {
                Ok(())
            } else {
                Err(ExitCode::from(EXIT_AUDIT))
            }
        }
        Err(e @ (CertificateError::Triangle { .. } | CertificateError::Cone { .. })) => {
            eprintln!("audit: FAIL (invalid geometry: {e})");
            Err(ExitCode::from(EXIT_AUDIT))
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(ExitCode::from(EXIT_IO))
        }
    }
}

fn render(args: RenderArgs) -> Result<(), ExitCode> {
    let cert = load(&args.input)?;
    let svg = render_certificate(&cert, args.viewport.unwrap_or(cert.params.radius));
    write_file(&args.out, &svg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Verify(args) => verify(args),
        Command::Render(args) => render(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
