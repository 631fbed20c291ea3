//! Command-line front end: evaluate metric operators on sampled set-valued
//! functions, draw the parabolic interpolation figures and run the
//! verification suites.

pub mod document;
pub mod output;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use metric_svf::analysis::BuiltinOracle;
use metric_svf::random::{seed_from_env, DEFAULT_SEED};
use metric_svf::svf::{eval_metric_pl, Partition};
use metric_svf::verify::{self, Suite};
use metric_svf::{
    apply_metric_operator, apply_minkowski_operator, decasteljau_ma_bernstein, CompactSet, Error,
    OperatorSpec, SampledSvf, Tolerance,
};

use document::SvfDocument;
use output::{csv_header, render_svg, selection_curves, set_rows, to_csv, FigureSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "metric-svf",
    version,
    about = "Metric approximation of set-valued functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an operator at points or on a grid and write `x,lo,hi` CSV.
    Eval(EvalArgs),
    /// Draw sampled sets and interpolated selections as SVG.
    Figure(FigureArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorName {
    Bernstein,
    Schoenberg,
    Lagrange,
    Pl,
    Decasteljau,
    MinkowskiBernstein,
    MinkowskiSchoenberg,
}

#[derive(Debug, clap::Args)]
pub struct EvalArgs {
    /// SVF document (JSON).
    #[arg(long, conflicts_with = "oracle")]
    pub input: Option<PathBuf>,
    /// Built-in oracle sampled on a uniform partition of [0, 1]: a, b, c,
    /// identity or parabola.
    #[arg(long, requires = "n")]
    pub oracle: Option<String>,
    /// Number of partition segments for --oracle.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "lagrange")]
    pub operator: OperatorName,
    /// B-spline order for Schoenberg operators.
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Evaluation points.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub x: Vec<f64>,
    /// Add a uniform grid with this many subintervals of the valid domain.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Output CSV path; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the sampled input document here.
    #[arg(long)]
    pub dump_input: Option<PathBuf>,
    /// Tie tolerance for projections.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, clap::Args)]
pub struct FigureArgs {
    /// parabolic-1, parabolic-2 or custom (with --input).
    pub name: String,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output SVG path; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Subintervals of the evaluation grid.
    #[arg(long, default_value_t = FigureSpec::default().grid)]
    pub grid: usize,
    /// Interior samples per chain segment.
    #[arg(long, default_value_t = FigureSpec::default().samples_per_segment)]
    pub n: usize,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
    pub suite: String,
    /// Seed for randomized suites; defaults to $METRIC_SVF_SEED or a fixed value.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report path; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. } | Error::UnsupportedOperator(_) | Error::NonUniformPartition => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a parsed command and returns its exit code, reporting errors on
/// standard error.
pub fn run(cli: Cli) -> u8 {
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Figure(a) => cmd_figure(&a),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

fn tolerance(tie: Option<f64>) -> CliResult<Tolerance> {
    let mut tol = Tolerance::default();
    if let Some(t) = tie {
        tol.tie_eps = t;
    }
    tol.validate()?;
    Ok(tol)
}

fn read_document(path: &Path) -> CliResult<SvfDocument> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    SvfDocument::from_json(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| input_error(e.to_string())),
    }
}

fn operator_spec(name: OperatorName, m: u32) -> CliResult<Option<OperatorSpec>> {
    Ok(match name {
        OperatorName::Bernstein | OperatorName::MinkowskiBernstein => Some(OperatorSpec::bernstein()),
        OperatorName::Schoenberg | OperatorName::MinkowskiSchoenberg => Some(OperatorSpec::schoenberg(m)?),
        OperatorName::Lagrange => Some(OperatorSpec::lagrange()),
        OperatorName::Pl | OperatorName::Decasteljau => None,
    })
}

fn evaluate(
    name: OperatorName,
    spec: Option<&OperatorSpec>,
    f: &SampledSvf,
    x: f64,
    tol: &Tolerance,
) -> CliResult<CompactSet> {
    Ok(match name {
        OperatorName::Bernstein | OperatorName::Schoenberg | OperatorName::Lagrange => {
            apply_metric_operator(spec.expect("coefficient operator"), f, x, tol)?
        }
        OperatorName::MinkowskiBernstein | OperatorName::MinkowskiSchoenberg => {
            apply_minkowski_operator(spec.expect("coefficient operator"), f, x, tol)?
        }
        OperatorName::Pl => eval_metric_pl(f, x, tol)?,
        OperatorName::Decasteljau => decasteljau_ma_bernstein(f, x, tol)?,
    })
}

/// The sampled function named by `--input` or `--oracle`/`--n`.
fn eval_input(a: &EvalArgs, tol: &Tolerance) -> CliResult<SampledSvf> {
    match (&a.input, &a.oracle) {
        (Some(path), _) => Ok(read_document(path)?.to_svf(tol)?),
        (None, Some(name)) => {
            let oracle = BuiltinOracle::by_name(name)
                .ok_or_else(|| input_error(format!("unknown oracle {name:?}")))?;
            let n = a.n.ok_or_else(|| input_error("--oracle needs --n"))?;
            Ok(SampledSvf::sample(
                &oracle,
                Partition::uniform(0.0, 1.0, n)?,
                *tol,
            )?)
        }
        (None, None) => Err(input_error("eval needs --input or --oracle")),
    }
}

pub fn cmd_eval(a: &EvalArgs) -> CliResult<u8> {
    let tol = tolerance(a.tol)?;
    let f = eval_input(a, &tol)?;
    if let Some(path) = &a.dump_input {
        write_output(Some(path), &SvfDocument::from_svf(&f).to_json())?;
    }
    let spec = operator_spec(a.operator, a.m)?;
    let mut xs = a.x.clone();
    if let Some(g) = a.grid {
        if g == 0 {
            return Err(input_error("--grid must be positive"));
        }
        let domain = match &spec {
            Some(s) => s.valid_domain(f.partition())?,
            None => f.partition().domain(),
        };
        xs.extend(uniform_points(domain.lo(), domain.hi(), g));
    }
    if xs.is_empty() {
        return Err(input_error("no evaluation points; pass --x or --grid"));
    }
    let mut rows = Vec::new();
    let mut header = None;
    for &x in &xs {
        let set = evaluate(a.operator, spec.as_ref(), &f, x, &tol)?;
        header.get_or_insert_with(|| csv_header(&set));
        rows.extend(set_rows(x, &set));
    }
    write_output(
        a.output.as_deref(),
        &to_csv(&header.expect("at least one point"), rows),
    )?;
    Ok(EXIT_OK)
}

fn uniform_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / n as f64
            }
        })
        .collect()
}

/// Built-in figure data: knots `0, 2, 6` with `[2, 8], {5}, {5}`, and
/// knots `0, 4, 8` with `[2, 4] ∪ [6, 8], [4.5, 5.5], [2, 4] ∪ [6, 8]`.
pub fn builtin_figure(name: &str) -> Option<SvfDocument> {
    let json = match name {
        "parabolic-1" => r#"{"partition":[0,2,6],"sets":[[[2,8]],[[5,5]],[[5,5]]]}"#,
        "parabolic-2" => r#"{"partition":[0,4,8],"sets":[[[2,4],[6,8]],[[4.5,5.5]],[[2,4],[6,8]]]}"#,
        _ => return None,
    };
    Some(SvfDocument::from_json(json).expect("built-in documents parse"))
}

pub fn cmd_figure(a: &FigureArgs) -> CliResult<u8> {
    let tol = tolerance(a.tol)?;
    let doc = match (a.name.as_str(), &a.input) {
        ("custom", Some(path)) => read_document(path)?,
        ("custom", None) => return Err(input_error("figure custom needs --input")),
        (name, _) => builtin_figure(name).ok_or_else(|| {
            input_error(format!(
                "unknown figure {name:?}; expected parabolic-1, parabolic-2 or custom"
            ))
        })?,
    };
    let f = doc.to_svf(&tol)?;
    let spec = FigureSpec {
        grid: a.grid,
        samples_per_segment: a.n,
    };
    let curves = selection_curves(&f, &OperatorSpec::lagrange(), &spec)?;
    write_output(a.output.as_deref(), &render_svg(&f, &curves, &a.name))?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<u8> {
    let suite: Suite = a.suite.parse()?;
    let seed = a.seed.unwrap_or_else(|| seed_from_env(DEFAULT_SEED));
    let report = verify::run(suite, seed)?;
    write_output(a.output.as_deref(), &report.to_string())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
}
