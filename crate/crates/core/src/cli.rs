//! Command-line harness: runs refinement studies and writes convergence
//! tables and plot data.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    rows_from_levels, solve_level, validate_levels, ConvergenceRow, LevelResult, SchemeConfig,
    SchemeKind,
};
use crate::error::Error;
use crate::problems::{Problem, ProblemId, TimeMode};
use crate::schemes::{EpsilonRule, Filter};

#[derive(Debug, Parser)]
#[command(name = "hjfilter", version, about = "Filtered schemes for Hamilton-Jacobi equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a refinement study and print the convergence table.
    Run(RunArgs),
    /// List the available problems and their default settings.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    New,
    Fo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Problem id: ex1a, ex1b, ex2, ex3, ex4, ex5, ex6 or ex7.
    #[arg(long)]
    problem: ProblemId,
    /// Comma-separated schemes: monotone, centered, eno2, filtered-centered,
    /// filtered-eno2, sl. Defaults to the problem's reference columns.
    #[arg(long, value_delimiter = ',')]
    scheme: Option<Vec<SchemeKind>>,
    #[arg(long, value_enum, default_value = "new")]
    filter: FilterArg,
    /// Override `c1` in `eps = c1 * dx`.
    #[arg(long)]
    eps_c1: Option<f64>,
    /// Force the extremum limiter on or off for every high-order scheme.
    #[arg(long, value_enum)]
    limiter: Option<Switch>,
    /// Comma-separated resolutions M (cells in 1D, nodes per axis in 2D), each double the previous.
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the finest-level solution of each scheme as plot data.
    #[arg(long)]
    plot: bool,
    /// Directory for plot files.
    #[arg(long, default_value = ".")]
    plot_dir: PathBuf,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub problem: ProblemId,
    pub schemes: Vec<SchemeKind>,
    pub filter: Filter,
    pub eps_c1: Option<f64>,
    pub limiter: Option<bool>,
    pub levels: Option<Vec<usize>>,
    pub cfl: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub plot_dir: Option<PathBuf>,
}

impl RunSpec {
    fn from_args(a: RunArgs) -> Self {
        RunSpec {
            problem: a.problem,
            schemes: a.scheme.unwrap_or_default(),
            filter: match a.filter {
                FilterArg::New => Filter::New,
                FilterArg::Fo => Filter::FroeseOberman,
            },
            eps_c1: a.eps_c1,
            limiter: a.limiter.map(|s| s == Switch::On),
            levels: a.levels,
            cfl: a.cfl,
            format: a.format,
            out: a.out,
            plot_dir: a.plot.then_some(a.plot_dir),
        }
    }

    /// Scheme configurations after applying overrides to the problem defaults.
    pub fn configs(&self, problem: &Problem) -> Vec<SchemeConfig> {
        let kinds = if self.schemes.is_empty() {
            problem.schemes.clone()
        } else {
            self.schemes.clone()
        };
        kinds
            .into_iter()
            .map(|kind| {
                let mut c = SchemeConfig::for_problem(problem, kind);
                c.filter = self.filter;
                if let Some(c1) = self.eps_c1 {
                    c.epsilon = EpsilonRule::linear(c1);
                }
                if let Some(on) = self.limiter {
                    c.limiter = on && kind.is_high_order();
                }
                if let Some(cfl) = self.cfl {
                    c.cfl = cfl;
                }
                c
            })
            .collect()
    }

    pub fn levels_for(&self, problem: &Problem) -> Vec<usize> {
        self.levels.clone().unwrap_or_else(|| problem.levels.clone())
    }
}

#[derive(Debug)]
pub enum ParseOutcome {
    Run(RunSpec),
    List,
}

/// Parses command-line arguments (including the program name).
pub fn parse_args<I, T>(args: I) -> Result<ParseOutcome, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(match cli.command {
        Command::Run(a) => ParseOutcome::Run(RunSpec::from_args(a)),
        Command::List => ParseOutcome::List,
    })
}

/// One column of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeColumn {
    pub scheme: SchemeKind,
    pub rows: Vec<ConvergenceRow>,
}

/// `7.51E-03`-style scientific notation with three significant digits.
pub fn format_sci3(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Inf".into() } else { "-Inf".into() };
    }
    let s = format!("{x:.2E}");
    let (mantissa, exp) = s.split_once('E').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exp.abs())
}

fn shared_steps(columns: &[SchemeColumn], row: usize) -> Option<usize> {
    let first = columns.first()?.rows.get(row)?.n;
    columns
        .iter()
        .all(|c| c.rows.get(row).map(|r| r.n) == Some(first))
        .then_some(first)
}

/// Serializes a convergence table. The `N` column is shared when every scheme
/// took the same number of steps; otherwise (steady problems) each scheme
/// gets its own iteration-count column.
pub fn emit_table(columns: &[SchemeColumn], format: Format) -> String {
    let rows = columns.iter().map(|c| c.rows.len()).max().unwrap_or(0);
    let shared = (0..rows).all(|r| shared_steps(columns, r).is_some());
    let mut out = String::new();
    match format {
        Format::Csv => {
            let mut header = vec!["M".to_string()];
            if shared {
                header.push("N".into());
            }
            for c in columns {
                header.push(format!("error_{}", c.scheme));
                header.push(format!("order_{}", c.scheme));
                if !shared {
                    header.push(format!("N_{}", c.scheme));
                }
            }
            let _ = writeln!(out, "{}", header.join(","));
            for r in 0..rows {
                let mut cells = vec![columns[0].rows[r].m.to_string()];
                if shared {
                    cells.push(columns[0].rows[r].n.to_string());
                }
                for c in columns {
                    let row = &c.rows[r];
                    cells.push(format!("{:e}", row.error));
                    cells.push(row.order.map(|o| format!("{o:e}")).unwrap_or_default());
                    if !shared {
                        cells.push(row.n.to_string());
                    }
                }
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        Format::Md => {
            let mut header = vec!["M".to_string()];
            if shared {
                header.push("N".into());
            }
            for c in columns {
                header.push(format!("{} error", c.scheme));
                header.push("order".into());
                if !shared {
                    header.push("N".into());
                }
            }
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in 0..rows {
                let mut cells = vec![columns[0].rows[r].m.to_string()];
                if shared {
                    cells.push(columns[0].rows[r].n.to_string());
                }
                for c in columns {
                    let row = &c.rows[r];
                    cells.push(format_sci3(row.error));
                    cells.push(row.order.map(|o| format!("{o:.2}")).unwrap_or_else(|| "-".into()));
                    if !shared {
                        cells.push(row.n.to_string());
                    }
                }
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
        }
    }
    out
}

/// Writes whitespace-separated plot columns under a `#` metadata header.
pub fn emit_plot_data(path: &Path, header: &str, rows: &[Vec<f64>]) -> Result<(), CliError> {
    let mut text = String::new();
    for line in header.lines() {
        let _ = writeln!(text, "# {line}");
    }
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
        let _ = writeln!(text, "{}", cells.join(" "));
    }
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] Error),
    #[error("{}: {1}", .0.display())]
    Io(PathBuf, #[source] io::Error),
}

/// Result of executing a [`RunSpec`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: String,
    pub columns: Vec<SchemeColumn>,
    pub plot_files: Vec<PathBuf>,
}

pub fn execute(spec: &RunSpec) -> Result<RunOutput, CliError> {
    let problem = spec.problem.problem();
    let levels = spec.levels_for(&problem);
    validate_levels(&levels)?;
    let mut columns = Vec::new();
    let mut plot_files = Vec::new();
    for config in spec.configs(&problem) {
        let results = levels
            .iter()
            .map(|&m| solve_level(&problem, &config, m))
            .collect::<Result<Vec<LevelResult>, Error>>()?;
        if let (Some(dir), Some(finest)) = (&spec.plot_dir, results.last()) {
            plot_files.push(write_plot(dir, &problem, &config, finest)?);
        }
        columns.push(SchemeColumn {
            scheme: config.kind,
            rows: rows_from_levels(&results),
        });
    }
    let table = emit_table(&columns, spec.format);
    if let Some(path) = &spec.out {
        fs::write(path, &table).map_err(|e| CliError::Io(path.clone(), e))?;
    }
    Ok(RunOutput {
        table,
        columns,
        plot_files,
    })
}

fn write_plot(dir: &Path, problem: &Problem, config: &SchemeConfig, level: &LevelResult) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    let path = dir.join(format!("{}_{}_M{}.dat", problem.id, config.kind, level.m));
    let mut header = format!(
        "problem={} scheme={} M={} N={} t={}",
        problem.id, config.kind, level.m, level.steps, level.time
    );
    let nodes = problem.nodes(level.cells)?;
    let rows: Vec<Vec<f64>> = match &level.field {
        None => {
            header.push_str("\ndiverged: no field");
            Vec::new()
        }
        Some(u) if problem.dimension() == 1 => {
            header.push_str("\nx u exact");
            let exact = problem.exact_field(level.cells, level.time)?;
            nodes.iter().zip(u).zip(&exact).map(|((&(x, _), &v), &e)| vec![x, v, e]).collect()
        }
        Some(u) => {
            header.push_str("\nx y u");
            nodes.iter().zip(u).map(|(&(x, y), &v)| vec![x, y, v]).collect()
        }
    };
    emit_plot_data(&path, &header, &rows)?;
    Ok(path)
}

fn list_problems() -> String {
    let mut out = String::new();
    for id in ProblemId::ALL {
        let p = id.problem();
        let time = match p.time {
            TimeMode::Evolution { t_final } => format!("T={t_final:.4}"),
            TimeMode::Steady { tol, max_iterations } => format!("steady tol={tol:e} max={max_iterations}"),
        };
        let schemes: Vec<&str> = p.schemes.iter().map(|s| s.as_str()).collect();
        let levels: Vec<String> = p.levels.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(
            out,
            "{:5} {}D {:48} {} cfl={} eps={}dx limiter={} norm={} levels={} schemes={}",
            id.as_str(),
            p.dimension(),
            p.title,
            time,
            p.cfl,
            p.eps_c1,
            if p.limiter { "on" } else { "off" },
            p.norm,
            levels.join(","),
            schemes.join(",")
        );
    }
    out
}

/// Entry point shared by the binary and the integration tests.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let spec = match parse_args(args) {
        Ok(ParseOutcome::Run(spec)) => spec,
        Ok(ParseOutcome::List) => {
            print!("{}", list_problems());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&spec) {
        Ok(out) => {
            if spec.out.is_none() {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                let _ = lock.write_all(out.table.as_bytes());
            }
            ExitCode::SUCCESS
        }
        Err(e @ CliError::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Io(..)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
