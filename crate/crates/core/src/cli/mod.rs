//! Command-line front end and the expression parser it shares with the
//! presentation file loader.

mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::freealg::presets::{load_file, preset, PresetError};
use crate::matops::{closed_power, iterated_power, rhat, AlgMatrix, MatError};
use crate::verify::{suite_all, suite_gr11, suite_gr2, suite_powers, Context, Report, DEFAULT_MAX_N, DEFAULT_SEED};
use crate::{Presentation, RatFunc};

pub use parse::{
    eval_expr, interpret, parse, parse_coeff, parse_relation, parse_with, reduce_str, Alphabet, Expr, Param,
    ParseError,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pqgrass", version, about = "Exact reductions in deformed Grassmann matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PresetArgs {
    /// Built-in presentation name.
    #[arg(long, conflicts_with = "preset_file")]
    preset: Option<String>,
    /// Presentation file (TOML).
    #[arg(long, value_name = "PATH")]
    preset_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Reduce {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Exit 0 iff the expression reduces to zero.
    Check {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the 4x4 R-matrix at spectral value x.
    Rmatrix {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the n-th power of the generic supermatrix.
    Power {
        #[arg(long)]
        n: u32,
        /// Use the closed form instead of repeated multiplication.
        #[arg(long)]
        closed_form: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check every overlap ambiguity of a presentation.
    Confluence {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteName {
    Gr2,
    Gr11,
    Powers,
    All,
}

/// Failure carrying its exit code.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Preset(#[from] PresetError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Matrix(#[from] MatError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Preset(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Matrix(_) | CliError::Io(_) => EXIT_FAIL,
        }
    }
}

enum Loaded {
    Builtin(&'static Presentation),
    Owned(Box<Presentation>),
}

impl Loaded {
    fn get(&self) -> &Presentation {
        match self {
            Loaded::Builtin(p) => p,
            Loaded::Owned(p) => p,
        }
    }
}

fn load(args: &PresetArgs) -> Result<Loaded, CliError> {
    match (&args.preset, &args.preset_file) {
        (Some(name), None) => Ok(Loaded::Builtin(preset(name)?)),
        (None, Some(path)) => Ok(Loaded::Owned(Box::new(load_file(path)?))),
        _ => Err(CliError::Usage("one of --preset or --preset-file is required".into())),
    }
}

/// Run with the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Run the command line `argv` (program name first), writing to `out` and `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Reduce { preset, expr } => {
            let pres = load(&preset)?;
            let nf = reduce_str(&expr, pres.get())?;
            writeln!(out, "{}", nf.display(pres.get()))?;
            Ok(EXIT_PASS)
        }
        Command::Check { preset, expr } => {
            let pres = load(&preset)?;
            let nf = reduce_str(&expr, pres.get())?;
            if nf.is_zero() {
                writeln!(out, "PASS: reduces to 0")?;
                Ok(EXIT_PASS)
            } else {
                writeln!(out, "FAIL: residual {}", nf.display(pres.get()))?;
                Ok(EXIT_FAIL)
            }
        }
        Command::Rmatrix { x, json } => {
            let x: RatFunc = parse_coeff(&x)?;
            let r = rhat(&x);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("strings serialize"))?;
            } else {
                writeln!(out, "{r}")?;
            }
            Ok(EXIT_PASS)
        }
        Command::Power { n, closed_form } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let pres = preset("gr11")?;
            let m = if closed_form { closed_power(n)?.to_matrix(pres)? } else { iterated_power(pres, n)? };
            print_entries(out, &m)?;
            Ok(EXIT_PASS)
        }
        Command::Verify { suite, max_n, seed, json } => {
            let ctx = Context::standard()?.with_seed(seed);
            let report = match suite {
                SuiteName::Gr2 => suite_gr2(&ctx),
                SuiteName::Gr11 => suite_gr11(&ctx),
                SuiteName::Powers => suite_powers(&ctx, max_n),
                SuiteName::All => suite_all(&ctx, max_n),
            };
            emit(out, &report, json)
        }
        Command::Confluence { preset, json } => {
            let pres = load(&preset)?;
            emit(out, &pres.get().overlap_check(), json)
        }
    }
}

fn print_entries(out: &mut dyn Write, m: &AlgMatrix<'_, RatFunc>) -> std::io::Result<()> {
    let names = [["A", "B"], ["C", "D"]];
    for (i, row) in names.iter().enumerate() {
        for (j, name) in row.iter().enumerate() {
            writeln!(out, "{name} = {}", m.get(i, j).display(m.presentation()))?;
        }
    }
    Ok(())
}

fn emit(out: &mut dyn Write, report: &Report, json: bool) -> Result<i32, CliError> {
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}
