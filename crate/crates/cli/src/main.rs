//! `riviera`: counting, verification, entropy curves and 2D jobs as CSV,
//! JSON or plain grid text.
//!
//! Exit codes: 0 success, 1 cross-check mismatch or internal failure,
//! 2 bad arguments, 3 enumeration cap exceeded.

mod jobs;
mod table;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use riviera_core::complexity::Method;
use riviera_core::grid2d::{EsMethod, Pattern};
use riviera_core::{Axis, Caps, Error, Exec, Family};

use jobs::{CountMethod, Ctx, Report};

#[derive(Debug, Parser)]
#[command(
    name = "riviera",
    version,
    about = "Exact counts and entropy curves for jammed Riviera configurations"
)]
struct Cli {
    /// Output format; grid2d enumerate, es-count and pattern default to text, everything else to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

fn family_arg() -> impl TypedValueParser<Value = Family> {
    PossibleValuesParser::new(Family::ALL.map(Family::name))
        .map(|s| s.parse::<Family>().expect("listed names parse"))
}

fn pattern_arg() -> impl TypedValueParser<Value = Pattern> {
    PossibleValuesParser::new(Pattern::ALL.map(Pattern::name))
        .map(|s| s.parse::<Pattern>().expect("listed names parse"))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountMethodArg {
    Brute,
    Series,
    Recurrence,
    ClosedForm,
    Digraph,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    Length,
    Occupancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComplexityMethodArg {
    Closed,
    Kl,
    Empirical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EsMethodArg {
    Brute,
    Lr,
    Auto,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit J(n, k) rows from one counting method.
    Count {
        #[arg(long, value_parser = family_arg())]
        family: Family,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "series")]
        method: CountMethodArg,
    },
    /// Cross-check every applicable counting method against brute force.
    Verify {
        #[arg(long, value_parser = family_arg())]
        family: Family,
        #[arg(long)]
        n_max: usize,
    },
    /// Length or occupancy totals with the denominator residual.
    Sequence {
        #[arg(long, value_parser = family_arg())]
        family: Family,
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long)]
        max: usize,
    },
    /// Configurational entropy S(rho) on a density grid.
    Complexity {
        #[arg(long, value_parser = family_arg())]
        family: Family,
        #[arg(long, value_enum, default_value = "closed")]
        method: ComplexityMethodArg,
        /// String length for the empirical method.
        #[arg(long, required_if_eq("method", "empirical"))]
        n: Option<usize>,
        /// First density of an inclusive grid; defaults to the open support.
        #[arg(long, requires = "rho_to", allow_negative_numbers = true)]
        rho_from: Option<f64>,
        #[arg(long, requires = "rho_from", allow_negative_numbers = true)]
        rho_to: Option<f64>,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        points: u32,
    },
    /// CSV behind the entropy comparison plots.
    SeedFigures {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        points: u32,
        /// Length of the empirical Riviera estimate.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Rectangular grids.
    #[command(subcommand)]
    Grid2d(GridCommand),
}

#[derive(Debug, Subcommand)]
enum GridCommand {
    /// Every m x n family member, north row first.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = family_arg(), default_value = "es")]
        family: Family,
    },
    /// Number of evolutionary stable m x n grids.
    EsCount {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: EsMethodArg,
    },
    /// A periodic construction at the requested size.
    Pattern {
        #[arg(long, value_parser = pattern_arg())]
        name: Pattern,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Minimum jammed occupancy and ES occupancy and count.
    Bounds {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Verify { .. } => "verify",
            Command::Sequence { .. } => "sequence",
            Command::Complexity { .. } => "complexity",
            Command::SeedFigures { .. } => "seed-figures",
            Command::Grid2d(GridCommand::Enumerate { .. }) => "grid2d enumerate",
            Command::Grid2d(GridCommand::EsCount { .. }) => "grid2d es-count",
            Command::Grid2d(GridCommand::Pattern { .. }) => "grid2d pattern",
            Command::Grid2d(GridCommand::Bounds { .. }) => "grid2d bounds",
        }
    }

    fn has_text_form(&self) -> bool {
        matches!(
            self,
            Command::Grid2d(
                GridCommand::Enumerate { .. }
                    | GridCommand::EsCount { .. }
                    | GridCommand::Pattern { .. }
            )
        )
    }
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(s) | Failure::Mismatch(s) => f.write_str(s),
            Failure::Io(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::CapExceeded { .. }) => 3,
            Failure::Core(
                Error::Parse(_)
                | Error::OutOfSupport { .. }
                | Error::UnsupportedFamily { .. }
                | Error::UnsupportedSize { .. }
                | Error::NoESExists { .. }
                | Error::DimensionMismatch(_)
                | Error::InsufficientTable { .. },
            )
            | Failure::Usage(_)
            | Failure::Io(_) => 2,
            Failure::Core(_) | Failure::Mismatch(_) => 1,
        }
    }
}

fn dispatch(command: &Command, ctx: &Ctx) -> Result<Report, Failure> {
    match *command {
        Command::Count {
            family,
            n_max,
            method,
        } => {
            let method = match method {
                CountMethodArg::Brute => CountMethod::Brute,
                CountMethodArg::Series => CountMethod::Series,
                CountMethodArg::Recurrence => CountMethod::Recurrence,
                CountMethodArg::ClosedForm => CountMethod::ClosedForm,
                CountMethodArg::Digraph => CountMethod::Digraph,
            };
            jobs::count(ctx, family, n_max, method)
        }
        Command::Verify { family, n_max } => jobs::verify(ctx, family, n_max),
        Command::Sequence { family, axis, max } => {
            let axis = match axis {
                AxisArg::Length => Axis::Length,
                AxisArg::Occupancy => Axis::Occupancy,
            };
            jobs::sequence(family, axis, max)
        }
        Command::Complexity {
            family,
            method,
            n,
            rho_from,
            rho_to,
            points,
        } => {
            if n.is_some() && method != ComplexityMethodArg::Empirical {
                return Err(Failure::Usage(
                    "--n applies only to --method empirical".into(),
                ));
            }
            let method = match method {
                ComplexityMethodArg::Closed => Method::Closed,
                ComplexityMethodArg::Kl => Method::Kl,
                ComplexityMethodArg::Empirical => Method::Empirical(n.expect("required by clap")),
            };
            jobs::complexity(ctx, family, method, rho_from.zip(rho_to), points as usize)
        }
        Command::SeedFigures { points, n } => jobs::seed_figures(points as usize, n as usize),
        Command::Grid2d(ref g) => match *g {
            GridCommand::Enumerate { m, n, family } => jobs::enumerate(ctx, m, n, family),
            GridCommand::EsCount { m, n, method } => {
                let (method, name) = match method {
                    EsMethodArg::Brute => (EsMethod::Brute, "brute"),
                    EsMethodArg::Lr => (EsMethod::Lr, "lr"),
                    EsMethodArg::Auto => (EsMethod::Auto, "auto"),
                };
                jobs::es_count_job(ctx, m, n, method, name)
            }
            GridCommand::Pattern { name, m, n } => jobs::pattern(name, m, n),
            GridCommand::Bounds { m, n } => jobs::bounds(m, n),
        },
    }
}

fn render(cli: &Cli, format: Format, report: &Report) -> String {
    match format {
        Format::Csv => report.table.to_csv(),
        Format::Json => {
            let meta = json!({
                "tool": "riviera",
                "version": env!("CARGO_PKG_VERSION"),
                "command": cli.command.name(),
                "args": report.args,
            });
            report.table.to_json(meta)
        }
        Format::Text => report.text.clone().unwrap_or_default(),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let format = match cli.format {
        Some(Format::Text) if !cli.command.has_text_form() => {
            return Err(Failure::Usage(format!(
                "{} has no text form; use --format csv or json",
                cli.command.name()
            )))
        }
        Some(f) => f,
        None if cli.command.has_text_form() => Format::Text,
        None => Format::Csv,
    };
    let ctx = Ctx {
        caps: Caps::from_env(),
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
    };
    let report = dispatch(&cli.command, &ctx)?;
    let out = render(cli, format, &report);
    match &cli.output {
        Some(path) => std::fs::write(path, out).map_err(Failure::Io)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(Failure::Io)?
        }
    }
    match report.mismatch {
        Some(msg) => Err(Failure::Mismatch(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("riviera: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
