//! `proxcg` command line: `solve`, `suite` and `profile`.
//!
//! Exit codes: 0 success (for `solve`: converged; for `suite`: at least one
//! cell converged), 1 usage, input or oracle error, 2 `solve` hit `max_iter`.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::bench::{cost_matrix, dolan_more, run_suite, CostMetric, ProblemSpec, SuiteOptions};
use crate::error::{Error, Result};
use crate::problems::parse_libsvm;
use crate::smooth::DEFAULT_STUDENT_NU;
use crate::solver::{solve, SolverConfig, Status, Variant};

use config::{
    ConfigFile, SolverOverrides, DEFAULT_LASSO_LAMBDA, DEFAULT_LOGISTIC_LAMBDA, DEFAULT_STUDENT_DB,
    DEFAULT_STUDENT_LAMBDA,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MAX_ITER: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "proxcg",
    version,
    about = "Proximal nonlinear conjugate gradient solvers and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one generated or LIBSVM instance and write trace.csv and summary.csv
    Solve(SolveArgs),
    /// Run every problem of a config file with several solvers
    Suite(SuiteArgs),
    /// Performance profile of a suite runs.csv
    Profile(ProfileArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// lasso, mcp, student-t or logistic
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Support size of the planted solution
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    /// MCP concavity parameter
    #[arg(long)]
    c: Option<f64>,
    /// Student-t dynamic range in dB
    #[arg(long)]
    d: Option<f64>,
    /// Student-t loss parameter
    #[arg(long)]
    nu: Option<f64>,
    /// Sparse design matrix (lasso)
    #[arg(long)]
    sparse: bool,
    /// LIBSVM file (logistic)
    #[arg(long)]
    data: Option<PathBuf>,
    /// Feature count of the LIBSVM file; inferred when omitted
    #[arg(long)]
    features: Option<usize>,
    #[arg(long, default_value = "alg31")]
    variant: Variant,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Config file whose [solver] section supplies defaults
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverOverrides,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    repetitions: Option<usize>,
    #[arg(long)]
    seed_base: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Comma separated solver list
    #[arg(long, value_delimiter = ',')]
    variants: Option<Vec<Variant>>,
    #[command(flatten)]
    solver: SolverOverrides,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// runs.csv written by `suite`
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "time")]
    metric: CostMetric,
    /// Output file
    #[arg(long, default_value = "profile.csv")]
    out: PathBuf,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Suite(a) => cmd_suite(&a),
        Command::Profile(a) => cmd_profile(&a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_ERROR
    })
}

fn required<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for family {family}")))
}

fn solve_spec(a: &SolveArgs) -> Result<ProblemSpec> {
    let fam = a.family.as_str();
    Ok(match fam {
        "lasso" => ProblemSpec::Lasso {
            m: required(a.m, "m", fam)?,
            n: required(a.n, "n", fam)?,
            s: required(a.s, "s", fam)?,
            lambda: a.lambda.unwrap_or(DEFAULT_LASSO_LAMBDA),
            sparse: a.sparse,
        },
        "mcp" => ProblemSpec::Mcp {
            m: required(a.m, "m", fam)?,
            n: required(a.n, "n", fam)?,
            s: required(a.s, "s", fam)?,
            lambda: a.lambda.unwrap_or(DEFAULT_LASSO_LAMBDA),
            c: required(a.c, "c", fam)?,
        },
        "student-t" => ProblemSpec::StudentT {
            n: required(a.n, "n", fam)?,
            dynamic_range: a.d.unwrap_or(DEFAULT_STUDENT_DB),
            lambda: a.lambda.unwrap_or(DEFAULT_STUDENT_LAMBDA),
            nu: a.nu.unwrap_or(DEFAULT_STUDENT_NU),
        },
        "logistic" => {
            let path = a
                .data
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--data is required for family logistic".into()))?;
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let name = path
                .file_name()
                .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned());
            ProblemSpec::Logistic {
                name,
                data: Arc::new(parse_libsvm(&text, a.features)?),
                lambda: a.lambda.unwrap_or(DEFAULT_LOGISTIC_LAMBDA),
            }
        }
        other => return Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
    })
}

fn usage_error(e: Error, sub: &str) -> i32 {
    eprintln!("error: {e}");
    eprintln!("\nUsage: proxcg {sub} [OPTIONS]\n\nFor more information, try 'proxcg {sub} --help'.");
    EXIT_ERROR
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

fn cmd_solve(a: &SolveArgs) -> Result<i32> {
    let spec = match solve_spec(a) {
        Ok(s) => s,
        Err(e @ Error::InvalidParameter(_)) => return Ok(usage_error(e, "solve")),
        Err(e) => return Err(e),
    };
    let file = match &a.config {
        Some(p) => ConfigFile::load(p)?.solver,
        None => SolverOverrides::default(),
    };
    let cfg = a
        .solver
        .or(&file)
        .apply(SolverConfig::default().with_variant(a.variant))?;
    let inst = spec.instance(a.seed)?;
    let report = solve(&inst.problem, &inst.x0, &cfg)?;
    create_dir(&a.out)?;
    output::write_trace(&a.out.join("trace.csv"), &report)?;
    output::write_summary(&a.out.join("summary.csv"), &spec.to_string(), a.seed, &report)?;
    eprintln!(
        "{} on {spec}: {} after {} iterations, f = {:.12e}",
        report.variant,
        report.status.name(),
        report.iterations,
        report.f
    );
    Ok(match report.status {
        Status::Converged => EXIT_OK,
        Status::MaxIter => EXIT_MAX_ITER,
        Status::OracleError => {
            if let Some(e) = &report.error {
                eprintln!("error: {e}");
            }
            EXIT_ERROR
        }
    })
}

fn cmd_suite(a: &SuiteArgs) -> Result<i32> {
    let file = ConfigFile::load(&a.config)?;
    let specs = file.specs()?;
    let variants = match (&a.variants, &file.suite.variants) {
        (Some(v), _) => v.clone(),
        (None, Some(names)) => names.iter().map(|n| n.parse()).collect::<Result<_>>()?,
        (None, None) => Variant::ALL.to_vec(),
    };
    let defaults = SuiteOptions::default();
    let options = SuiteOptions {
        repetitions: a.repetitions.or(file.suite.repetitions).unwrap_or(defaults.repetitions),
        seed_base: a.seed_base.or(file.suite.seed_base).unwrap_or(defaults.seed_base),
        workers: a.workers.or(file.suite.workers).unwrap_or(defaults.workers),
        baseline_mu_increase: file.suite.baseline_mu_increase.unwrap_or(defaults.baseline_mu_increase),
    };
    let base = a.solver.or(&file.solver).apply(SolverConfig::default())?;
    let result = run_suite(&specs, &variants, &base, &options)?;

    create_dir(&a.out)?;
    let aggs = &result.aggregates;
    output::write_runs(&a.out.join("runs.csv"), &result.runs)?;
    output::write_aggregates(&a.out.join("aggregate.csv"), aggs)?;
    output::write_wide(&a.out.join("iterations.csv"), aggs, |r| r.mean_iterations, false)?;
    output::write_wide(&a.out.join("time.csv"), aggs, |r| r.mean_time, true)?;
    output::write_switches(&a.out.join("switches.csv"), aggs)?;
    for agg in aggs {
        eprintln!(
            "{:<40} {:<13} converged {}/{}  iterations {:.1}",
            agg.spec,
            agg.solver.name(),
            agg.converged,
            agg.runs,
            agg.mean_iterations
        );
    }
    if result.runs.iter().any(|r| r.converged()) {
        Ok(EXIT_OK)
    } else {
        eprintln!("error: no run converged");
        Ok(EXIT_ERROR)
    }
}

fn cmd_profile(a: &ProfileArgs) -> Result<i32> {
    let runs = output::read_runs(&a.input)?;
    let profile = dolan_more(&cost_matrix(&runs, a.metric)?)?;
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    output::write_profile(&a.out, &profile)?;
    Ok(EXIT_OK)
}
