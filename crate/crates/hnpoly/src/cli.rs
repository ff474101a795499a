//! Argument parsing, command execution and exit codes.
//!
//! Exit codes: 0 success, 1 verification failure or mismatch, 2 bad input,
//! 64 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hnpoly_core::bundles::{ss_series_recursive, stack_series, AttestedPolynomial, BundleProblem, CurveParams};
use hnpoly_core::glroot::{Composition, Genus};
use hnpoly_core::pseries::TruncatedSeries;

use crate::json::{to_json, PolyReport, SeriesDocument, SeriesJson, VerifyDocument};
use crate::suites::{self, Suite, SuiteParams};
use crate::{compute, render};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    #[default]
    Closed,
    Recursive,
    Both,
}

#[derive(Parser, Debug)]
#[command(name = "hnpoly", version)]
#[command(about = "Poincaré series of moduli stacks and spaces of vector bundles on a curve")]
#[command(after_help = "EXAMPLES:
    hnpoly stack --n 2 --g 2 --order 20
    hnpoly ss --n 2 --d 1 --g 2 --order 40 --method both
    hnpoly stable --n 3 --d 1 --g 2 --fixed-det --format latex
    hnpoly verify langlands --n-max 4 --samples 500 --seed 7")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Highest power of t carried by every series
    #[arg(long, global = true, default_value_t = 60)]
    pub order: usize,

    /// Worker threads; 0 picks one per core
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Also write the JSON document to this file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Series of the stack of all rank-n bundles
    Stack {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        g: i64,
    },
    /// Series of the semistable locus in rank n, degree d
    Ss {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Poincaré polynomial of the moduli space for d prime to n
    Stable {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        g: i64,
        /// Fix the determinant
        #[arg(long)]
        fixed_det: bool,
    },
    /// Run an identity suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        g: i64,
    },
}

/// Everything a run depends on. Equal configs give byte-identical output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub order: usize,
    pub format: Format,
    pub threads: usize,
    pub out: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        Self {
            command: cli.command,
            order: cli.order,
            format: cli.format,
            threads: cli.threads,
            out: cli.out,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hnpoly_core::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_contract_violation() => EXIT_FAILURE,
            CliError::Core(hnpoly_core::Error::NotAttested(_)) => EXIT_FAILURE,
            CliError::Core(_) | CliError::Io { .. } => EXIT_PRECONDITION,
            CliError::ThreadPool(_) => EXIT_FAILURE,
        }
    }
}

/// Rendered output of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    /// What goes to standard output, in the requested format.
    pub text: String,
    /// The JSON document, also written to `--out`.
    pub json: String,
    pub exit: u8,
}

pub fn execute(config: &RunConfig) -> Result<Output, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.threads).build()?;
    pool.install(|| dispatch(config))
}

fn dispatch(config: &RunConfig) -> Result<Output, CliError> {
    let order = config.order;
    match config.command {
        Command::Stack { n, g } => {
            let curve = CurveParams::new(g)?;
            let s = stack_series(&Composition::whole(n)?, curve, order);
            let doc = series_doc("stack", n, None, curve.genus(), &s);
            Ok(series_output(config.format, doc, &s))
        }
        Command::Ss { n, d, g, method } => {
            let problem = BundleProblem::new(n, d, CurveParams::new(g)?, order)?;
            ss_command(config.format, &problem, method)
        }
        Command::Stable { n, d, g, fixed_det } => {
            let problem = BundleProblem::new(n, d, CurveParams::new(g)?, order)?;
            let poly = if fixed_det {
                compute::fixed_det(&problem)?
            } else {
                compute::stable(&problem)?
            };
            stable_output(config.format, &problem, fixed_det, &poly)
        }
        Command::Verify {
            suite,
            n_max,
            samples,
            seed,
            g,
        } => {
            let params = SuiteParams {
                n_max,
                samples: samples as usize,
                seed,
                genus: Genus::new(g)?,
                order,
            };
            let report = suites::run(suite, &params)?;
            let doc = VerifyDocument {
                command: "verify".into(),
                suite: suite.name().into(),
                n_max,
                samples: params.samples,
                seed,
                g: params.genus.get(),
                trunc_order: order,
                cases: report.cases,
                checks: report.checks,
                status: if report.passed() { "PASS" } else { "FAIL" }.into(),
                counterexample: report.counterexample.clone(),
            };
            let json = to_json(&doc);
            let text = match config.format {
                Format::Json => json.clone(),
                Format::Plain | Format::Latex => {
                    let mut t = format!(
                        "suite: {}\ncases: {}\nchecks: {}\n{}\n",
                        doc.suite, doc.cases, doc.checks, doc.status
                    );
                    if let Some(c) = &doc.counterexample {
                        t.push_str(&format!("counterexample: {c}\n"));
                    }
                    t
                }
            };
            let exit = if report.passed() { 0 } else { EXIT_FAILURE };
            Ok(Output { text, json, exit })
        }
    }
}

fn series_doc(command: &str, n: usize, d: Option<i64>, g: Genus, s: &TruncatedSeries) -> SeriesDocument {
    SeriesDocument {
        command: command.into(),
        n,
        d,
        g: g.get(),
        series: SeriesJson::from_series(s),
        method: None,
        recursive: None,
        verdict: None,
        report: None,
    }
}

fn series_output(format: Format, doc: SeriesDocument, s: &TruncatedSeries) -> Output {
    let json = to_json(&doc);
    let text = match format {
        Format::Json => json.clone(),
        Format::Plain => format!("{}\n", render::plain(s)),
        Format::Latex => format!("{}\n", render::latex(s, false)),
    };
    Output { text, json, exit: 0 }
}

fn ss_command(format: Format, problem: &BundleProblem, method: Method) -> Result<Output, CliError> {
    let g = problem.curve.genus();
    let (n, d) = (problem.rank, Some(problem.degree));
    let method_name = match method {
        Method::Closed => "closed",
        Method::Recursive => "recursive",
        Method::Both => "both",
    };
    let (primary, secondary) = match method {
        Method::Closed => (compute::ss_closed(problem)?, None),
        Method::Recursive => (ss_series_recursive(problem)?, None),
        Method::Both => (compute::ss_closed(problem)?, Some(ss_series_recursive(problem)?)),
    };
    let mut doc = series_doc("ss", n, d, g, &primary);
    doc.method = Some(method_name.into());
    let Some(rec) = secondary else {
        return Ok(series_output(format, doc, &primary));
    };
    let matched = rec == primary;
    let verdict = if matched { "MATCH" } else { "MISMATCH" };
    doc.recursive = Some(SeriesJson::from_series(&rec));
    doc.verdict = Some(verdict.into());
    let json = to_json(&doc);
    let show = |s: &TruncatedSeries| match format {
        Format::Latex => render::latex(s, false),
        _ => render::plain(s),
    };
    let text = match format {
        Format::Json => json.clone(),
        _ => format!("closed: {}\nrecursive: {}\n{verdict}\n", show(&primary), show(&rec)),
    };
    let exit = if matched { 0 } else { EXIT_FAILURE };
    Ok(Output { text, json, exit })
}

fn stable_output(
    format: Format,
    problem: &BundleProblem,
    fixed_det: bool,
    poly: &AttestedPolynomial,
) -> Result<Output, CliError> {
    let (lo, hi) = poly.zero_window();
    let report = PolyReport {
        fixed_det,
        degree: poly.degree(),
        euler_characteristic: poly.euler_characteristic().to_string(),
        vanishing_order_at_minus_one: poly.vanishing_order_at_minus_one()?,
        zero_window: [lo, hi],
    };
    let truncated = poly.series().truncate(poly.degree())?;
    let mut doc = series_doc(
        "stable",
        problem.rank,
        Some(problem.degree),
        problem.curve.genus(),
        poly.series(),
    );
    doc.report = Some(report.clone());
    let json = to_json(&doc);
    let body = match format {
        Format::Json => {
            return Ok(Output {
                text: json.clone(),
                json,
                exit: 0,
            })
        }
        Format::Plain => render::plain(&truncated),
        Format::Latex => render::latex(&truncated, true),
    };
    let text = format!(
        "{body}\ndegree: {}\neuler_characteristic: {}\nvanishing_order_at_minus_one: {}\nzero_window: {lo}..={hi}\n",
        report.degree, report.euler_characteristic, report.vanishing_order_at_minus_one
    );
    Ok(Output { text, json, exit: 0 })
}

/// Runs a parsed command line: prints, writes `--out`, returns the exit code.
pub fn run(cli: Cli) -> ExitCode {
    let config = RunConfig::from(cli);
    let result = execute(&config).and_then(|out| {
        if let Some(path) = &config.out {
            fs::write(path, &out.json).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Parses `std::env::args` and runs; usage errors exit with 64.
pub fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}
