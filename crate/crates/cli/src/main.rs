//! `strata`: refined Brill-Noether stratification reports for trigonal
//! curves.
//!
//! Exit codes: 0 on success, 2 on validation errors (bad flags, invalid
//! genus/Maroni data), 3 on internal consistency or oracle failures.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use strata_core::report::{self, HasseDiagram, InjectedFault, ReportOptions};
use strata_core::splitting::SplittingType;
use strata_core::theory::{self, TheoryError, TrigonalContext};

const EXIT_VALIDATION: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Practical cap keeping single-stratum work desk-scale.
const MAX_GENUS: i64 = 10_000;
/// Full reports enumerate O(g^2) strata and reduce their poset; keep that
/// desk-scale too.
const MAX_REPORT_GENUS: i64 = 200;

#[derive(Parser)]
#[command(
    name = "strata",
    about = "Splitting-type stratification of line bundles on trigonal curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every stratum for a curve class and emit a report.
    Report(ReportArgs),
    /// Classify a single splitting type (the degree is implied by the type).
    Classify(ClassifyArgs),
    /// Cross-validate the component formulas against subset enumeration.
    OracleCheck(OracleArgs),
}

#[derive(Args)]
struct ContextArgs {
    /// Genus of the curve.
    #[arg(short, long)]
    genus: i64,
    /// Maroni invariant (same parity as the genus).
    #[arg(short = 'n', long)]
    maroni: i64,
    /// Assume the curve is general of its Maroni invariant (counts are
    /// proven for general curves only). Disable with --general=false.
    #[arg(
        long,
        default_value_t = true,
        action = clap::ArgAction::Set,
        num_args = 0..=1,
        default_missing_value = "true"
    )]
    general: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    context: ContextArgs,
    /// Line-bundle degree d; strata live in Pic^d.
    #[arg(short, long)]
    degree: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Keep strata that are empty with negative expected dimension.
    #[arg(long)]
    include_empty: bool,
    /// Drop display rows below this dimension.
    #[arg(long)]
    min_dim: Option<i64>,
    /// Enumeration spread bound (default g + 2, which covers every stratum
    /// that can be non-empty).
    #[arg(long)]
    spread_bound: Option<i64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    context: ContextArgs,
    /// Splitting type "a,b,c"; quote a leading minus (--type " -4,0,0") or
    /// use --type=-4,0,0.
    #[arg(long, allow_hyphen_values = true)]
    r#type: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Largest genus included in the sweep.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(3..=58))]
    max_genus: i64,
    /// Test-only: corrupt the enumeration to prove the check catches it.
    #[arg(long, hide = true, value_enum)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    /// Shift the admissible base-point window by one.
    MWindow,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Report(args) => run_report(args),
        Command::Classify(args) => run_classify(args),
        Command::OracleCheck(args) => run_oracle_check(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &TheoryError) -> u8 {
    match err {
        TheoryError::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_VALIDATION,
    }
}

fn build_context(args: &ContextArgs, degree: i64) -> Result<TrigonalContext, TheoryError> {
    if args.genus > MAX_GENUS {
        return Err(TheoryError::Contract(format!(
            "genus {} exceeds the supported cap {MAX_GENUS}",
            args.genus
        )));
    }
    TrigonalContext::new(args.genus, args.maroni, degree, args.general)
}

fn run_report(args: ReportArgs) -> Result<ExitCode, TheoryError> {
    if args.context.genus > MAX_REPORT_GENUS {
        return Err(TheoryError::Contract(format!(
            "full reports are supported up to genus {MAX_REPORT_GENUS}, got {}",
            args.context.genus
        )));
    }
    let ctx = build_context(&args.context, args.degree)?;
    let strat = report::build_stratification(&ctx, args.spread_bound)?;
    let opts = ReportOptions {
        include_empty: args.include_empty,
        min_dim: args.min_dim,
    };
    let diagram = report::hasse_diagram(&strat, &opts);
    let rendered = render_diagram(&diagram, args.format)?;
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}

fn render_diagram(diagram: &HasseDiagram, format: Format) -> Result<String, TheoryError> {
    Ok(match format {
        Format::Json => report::emit_json(&report::to_document(diagram)?),
        Format::Text => report::emit_text(diagram)?,
        Format::Dot => report::emit_dot(diagram),
    })
}

fn run_classify(args: ClassifyArgs) -> Result<ExitCode, TheoryError> {
    let e = parse_type(&args.r#type)?;
    // Eq. (1) in rank 3: the type determines the line-bundle degree.
    let degree = e.total() + args.context.genus + 2;
    let ctx = build_context(&args.context, degree)?;
    let stratum = theory::classify(&ctx, &e)?;
    let rendered = match args.format {
        Format::Text => report::render_stratum(&ctx, &stratum)?,
        Format::Json => report::emit_stratum_json(&report::stratum_doc(&stratum)?),
        Format::Dot => {
            return Err(TheoryError::Contract(
                "classify renders a single stratum; use --format text or json".to_string(),
            ))
        }
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}

fn run_oracle_check(args: OracleArgs) -> Result<ExitCode, TheoryError> {
    let fault = args
        .inject_fault
        .map(|FaultArg::MWindow| InjectedFault::MWindowShift);
    let sweep = report::oracle_sweep(args.max_genus, fault)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "oracle check up to genus {}: {} strata checked, {} failures",
        args.max_genus,
        sweep.strata_checked,
        sweep.failures.len()
    );
    for failure in sweep.failures.iter().take(20) {
        let _ = writeln!(
            out,
            "  FAIL g={} n={} type={}: {}",
            failure.g, failure.n, failure.e, failure.what
        );
    }
    if sweep.failures.len() > 20 {
        let _ = writeln!(out, "  ... and {} more", sweep.failures.len() - 20);
    }
    print!("{out}");
    if sweep.failures.is_empty() {
        println!("PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL");
        Ok(ExitCode::from(EXIT_INTERNAL))
    }
}

fn parse_type(text: &str) -> Result<SplittingType, TheoryError> {
    let cleaned = text.trim().trim_start_matches('(').trim_end_matches(')');
    let entries = cleaned
        .split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|_| {
                TheoryError::Contract(format!(
                    "cannot parse splitting type {text:?}: expected integers like \"-4,0,0\""
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SplittingType::new(entries)?)
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<(), TheoryError> {
    match path {
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| TheoryError::Internal(format!("stdout write failed: {e}")))
        }
        Some(p) => std::fs::write(p, content)
            .map_err(|e| TheoryError::Contract(format!("cannot write {}: {e}", p.display()))),
    }
}
