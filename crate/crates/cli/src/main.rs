//! `ndim`: evaluate `∫ e^{ix}/(x² + a²) dx` by negative-dimensional
//! resummation, residues and quadrature, run the integrand corpus, and check
//! the exact identities behind the method.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use ndim_core::identities::{self, Suite, SuiteConfig};
use ndim_core::oracles::{builtin_corpus, parse_corpus};
use ndim_core::report::{
    self, budget_from_env, parse_a_values, parse_methods, CorpusTolerance, OutputFormat, RunConfig,
    Tolerances,
};
use ndim_core::Branch;

#[derive(Parser, Debug)]
#[command(
    name = "ndim",
    version,
    about = "Negative-dimensional integration of real-line integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate ∫ e^{ix}/(x²+a²) dx for one or more scales a.
    Eval(EvalArgs),
    /// Compare residues against quadrature on a corpus of rational integrands.
    Corpus(CorpusArgs),
    /// Run the exact-identity suites.
    Identities(IdentityArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// human, json or csv
    #[arg(long, default_value = "human")]
    format: String,
    /// Omit timing fields from JSON and CSV output.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Comma-separated list of scales.
    #[arg(long = "a", value_name = "LIST")]
    a: Option<String>,
    /// Inclusive range start:stop:step.
    #[arg(long = "a-range", value_name = "RANGE")]
    a_range: Option<String>,
    /// Comma-separated subset of ndim,residue,quad.
    #[arg(long, default_value = "ndim,residue,quad")]
    methods: String,
    /// Print the per-term ledger for m = 0..=N.
    #[arg(long, value_name = "N")]
    terms_table: Option<u32>,
    /// Largest accepted pairwise relative discrepancy.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 1e-16)]
    series_tol: f64,
    #[arg(long, default_value_t = 400)]
    max_terms: usize,
    #[arg(long, default_value_t = 1e-14)]
    quad_abs: f64,
    #[arg(long, default_value_t = 1e-12)]
    quad_rel: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Corpus file (JSON Lines). Uses the built-in corpus when omitted.
    path: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    rel_tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    /// Run a single suite.
    #[arg(long)]
    suite: Option<String>,
    /// Largest |q| on the Pochhammer grid.
    #[arg(long, default_value_t = 20)]
    max_q: i64,
    /// Branch of (−1)^{1/2} in the reflection identity: plus-i or minus-i.
    #[arg(long)]
    branch: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn tolerances(args: &EvalArgs) -> Result<Tolerances> {
    Ok(Tolerances {
        quad_abs: args.quad_abs,
        quad_rel: args.quad_rel,
        series_stop: args.series_tol,
        max_terms: args.max_terms,
        comparison: args.tol,
        budget: budget_from_env()?,
    })
}

fn run_eval(args: EvalArgs) -> Result<ExitCode> {
    let config = RunConfig {
        methods: parse_methods(&args.methods)?,
        a_values: parse_a_values(args.a.as_deref(), args.a_range.as_deref())?,
        tolerances: tolerances(&args)?,
        format: args.output.format.parse()?,
        terms_table: args.terms_table,
    };
    let reports = report::evaluate_sweep(&config)?;
    print!(
        "{}",
        report::render(&reports, &config, !args.output.no_timing)
    );
    Ok(status(
        reports
            .iter()
            .all(|r| r.within(config.tolerances.comparison)),
    ))
}

fn run_corpus(args: CorpusArgs) -> Result<ExitCode> {
    let format: OutputFormat = args.output.format.parse()?;
    let entries = match &args.path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            parse_corpus(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => builtin_corpus(),
    };
    let quad = Tolerances {
        budget: budget_from_env()?,
        ..Tolerances::default()
    };
    let tol = CorpusTolerance {
        abs: args.abs_tol,
        rel: args.rel_tol,
    };
    let outcomes = report::run_corpus(&entries, tol, &quad);
    print!("{}", report::render_corpus(&outcomes, format));
    Ok(status(outcomes.iter().all(|o| o.passed)))
}

fn run_identities(args: IdentityArgs) -> Result<ExitCode> {
    let format: OutputFormat = args.output.format.parse()?;
    let branch = match &args.branch {
        Some(b) => b.parse::<Branch>()?,
        None => Branch::default(),
    };
    let config = SuiteConfig {
        max_q: args.max_q,
        branch,
        ..SuiteConfig::default()
    };
    let outcomes = match &args.suite {
        Some(name) => vec![identities::run_suite(name.parse::<Suite>()?, &config)],
        None => identities::run_all(&config),
    };
    print!("{}", report::render_identities(&outcomes, format));
    Ok(status(outcomes.iter().all(|o| o.passed())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Corpus(args) => run_corpus(args),
        Command::Identities(args) => run_identities(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
