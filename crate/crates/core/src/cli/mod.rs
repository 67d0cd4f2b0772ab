//! `qdist` command line. Every subcommand writes one table (CSV, JSON or
//! aligned text) to `--out` or stdout; figure commands given `--out` also
//! write `<out>.plot.py` next to the data.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 numerical failure.

mod commands;
pub mod fixed;
pub mod plot;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::distances::Metric;
use crate::error::Error;
use crate::experiments::{Report, ReferenceEntry, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qdist", version, about = "Typical distances between random quantum states")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Master seed (required by every sampling command)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Samples per point; each command has its own default
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Write the table here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; output does not depend on it
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Density of a limiting spectral law on a grid
    Pdf {
        #[arg(long, value_enum)]
        law: LawArg,
        /// Rectangularity K/N (ignored by fc and semicircle)
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// LO:HI:STEP
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Grid,
    },
    /// Registry of asymptotic constants
    Constants {
        #[arg(long)]
        name: Option<String>,
    },
    /// Raw draws: spectra, amplitudes, probability vectors or ball points
    Sample {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[arg(long)]
        n: usize,
        /// Environment dimension for induced states (default N)
        #[arg(long)]
        k: Option<usize>,
        /// Dirichlet parameter
        #[arg(long, default_value_t = 1.0)]
        s: f64,
    },
    /// Monte Carlo mean of a distance, or its value on fixed states
    Distance {
        #[arg(long, value_parser = parse_metric)]
        metric: Metric,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Against::Pair)]
        against: Against,
        /// Two textbook states "A|B", e.g. "diag(1,0)|maximally-mixed"
        #[arg(long)]
        fixed: Option<String>,
    },
    /// Seven metrics across the three reference columns (rho-vs-mixed, rho-vs-sigma, pure)
    Table1 {
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Average distance against dimension
    Converge {
        #[arg(long, value_enum)]
        metric: ConvergeMetric,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Against::Pair)]
        against: Against,
    },
    /// Average distance against rectangularity c = K/N
    Cdep {
        #[arg(long, value_enum)]
        metric: CdepMetric,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        c_list: Vec<f64>,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Against::Pair)]
        against: Against,
    },
    /// Empirical P(|D_Tr - D| > eps) per dimension
    Tail {
        #[arg(long, alias = "eps-tail")]
        eps: f64,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        n_list: Vec<usize>,
    },
    /// Coupled kicked tops: Helstrom spectrum or relaxation of D_Tr
    KickedTop {
        #[arg(value_enum)]
        mode: TopMode,
        #[arg(long)]
        j1: Option<f64>,
        #[arg(long)]
        j2: Option<f64>,
        #[arg(long)]
        kick: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        /// Harvest time (spectrum) or series length (relax)
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 100)]
        realizations: usize,
        #[arg(long, default_value_t = 60)]
        bins: usize,
        /// Initial basis indices l,l' for relax
        #[arg(long, value_delimiter = ',', num_args = 1..=2)]
        pair: Option<Vec<usize>>,
    },
    /// Coherence in the computational basis
    Coherence {
        #[arg(long, value_enum)]
        kind: CoherenceKind,
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FieldArg::C)]
        field: FieldArg,
        #[arg(long, value_enum)]
        purity: Option<Purity>,
        #[arg(long, default_value_t = 50)]
        bins: usize,
    },
    /// Entanglement of random bipartite states
    Entangle {
        #[arg(long, value_enum)]
        kind: EntangleKind,
        #[arg(long, default_value_t = 10)]
        na: usize,
        #[arg(long, default_value_t = 10)]
        nb: usize,
    },
    /// Mean L1, L2 and L-inf distances in the unit ball
    Ball {
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1,2,3")]
        n_list: Vec<usize>,
    },
    /// Distances between random probability vectors
    Classical {
        #[arg(long, value_enum)]
        measure: Option<MeasureArg>,
        #[arg(long, value_enum)]
        quantity: Option<ClassicalArg>,
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
    /// E Tr g(rho) h(sigma) against its factorized and asymptotic values
    FreeProduct {
        #[arg(long, value_enum)]
        case: FreeCase,
        /// Exponent for the power case
        #[arg(long, default_value_t = 0.5)]
        s: f64,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    Mp,
    Smp,
    Fc,
    Semicircle,
    Aubrun,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Hs,
    Induced,
    PureC,
    PureR,
    Dirichlet,
    Ball,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Against {
    Pair,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConvergeMetric {
    Tr,
    Bures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CdepMetric {
    Tr,
    Hs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TopMode {
    Spectrum,
    Relax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoherenceKind {
    RelEnt,
    L1,
    Offdiag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    R,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Purity {
    Pure,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EntangleKind {
    Negativity,
    Fraction,
    Gconc,
    PureNeg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Flat,
    Statistical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassicalArg {
    L1,
    Bhatt,
    Bures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FreeCase {
    Identity,
    Kl,
    Power,
}

/// Evaluation grid `lo + i step`, `i = 0..count`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub step: f64,
    pub count: usize,
    /// Decimal places of the inputs; points are rounded to this many.
    pub decimals: Option<usize>,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        (0..self.count)
            .map(|i| {
                let x = self.lo + i as f64 * self.step;
                match self.decimals {
                    Some(d) => format!("{x:.d$}").parse().unwrap_or(x),
                    None => x,
                }
            })
            .collect()
    }
}

const MAX_GRID: usize = 10_000_000;

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected LO:HI:STEP".into());
    }
    let mut v = [0.0f64; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.trim().parse().map_err(|_| format!("'{p}' is not a number"))?;
    }
    let [lo, hi, step] = v;
    if !(lo.is_finite() && hi.is_finite() && step > 0.0 && step.is_finite() && hi >= lo) {
        return Err("need finite LO <= HI and STEP > 0".into());
    }
    let span = ((hi - lo) / step * (1.0 + 1e-12)).floor();
    if span >= MAX_GRID as f64 {
        return Err(format!("grid has more than {MAX_GRID} points"));
    }
    // places after the decimal point, unless a part uses an exponent
    let decimals = parts
        .iter()
        .map(|p| {
            let p = p.trim();
            if p.contains(['e', 'E']) {
                None
            } else {
                Some(p.split_once('.').map_or(0, |(_, f)| f.len()))
            }
        })
        .try_fold(0usize, |acc, d| d.map(|d| acc.max(d)));
    Ok(Grid {
        lo,
        step,
        count: span as usize + 1,
        decimals,
    })
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Result of one subcommand before formatting.
pub(crate) struct Outcome {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub params: Value,
    pub table: Table,
    pub references: Vec<ReferenceEntry>,
    pub summary: Option<Value>,
    pub plot: Option<plot::PlotSpec>,
    /// Text format unless `--format` says otherwise.
    pub prefers_text: bool,
    /// Preformatted text output, replacing the aligned table.
    pub text: Option<String>,
}

impl Outcome {
    pub fn new(command: &'static str, table: Table) -> Self {
        Outcome {
            command,
            seed: None,
            params: Value::Null,
            table,
            references: Vec::new(),
            summary: None,
            plot: None,
            prefers_text: false,
            text: None,
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return EXIT_USAGE;
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let outcome = match cli.common.threads {
        Some(0) => return Err(usage("--threads must be at least 1")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| usage(format!("cannot start {t} worker threads: {e}")))?
            .install(|| commands::dispatch(cli)),
        None => commands::dispatch(cli),
    }?;
    let wall = start.elapsed().as_secs_f64();
    let format = cli
        .common
        .format
        .unwrap_or(if outcome.prefers_text { Format::Text } else { Format::Csv });
    let body = match format {
        Format::Csv => outcome.table.to_csv()?,
        Format::Json => Report {
            command: outcome.command.to_string(),
            seed: outcome.seed,
            params: outcome.params.clone(),
            table: outcome.table.clone(),
            references: outcome.references.clone(),
            summary: outcome.summary.clone(),
            wall_time_s: wall,
        }
        .to_json()?,
        Format::Text => outcome.text.clone().unwrap_or_else(|| render_text(&outcome)),
    };
    match &cli.common.out {
        Some(path) => {
            std::fs::write(path, &body).map_err(Error::from)?;
            if let (Some(spec), Format::Csv | Format::Json) = (&outcome.plot, format) {
                let name = path.file_name().and_then(|n| n.to_str()).ok_or_else(|| usage("--out needs a file name"))?;
                std::fs::write(plot_path(path), spec.script(name)).map_err(Error::from)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(Error::from)?;
        }
    }
    Ok(())
}

/// `dir/name.csv` -> `dir/name.plot.py`.
pub fn plot_path(out: &std::path::Path) -> PathBuf {
    out.with_extension("plot.py")
}

fn render_text(o: &Outcome) -> String {
    let csv_cells: Vec<Vec<String>> = o
        .table
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| match c {
                    crate::experiments::Cell::Text(s) => s.clone(),
                    crate::experiments::Cell::Int(i) => i.to_string(),
                    crate::experiments::Cell::Float(v) => crate::experiments::format_float(*v),
                    crate::experiments::Cell::Missing => "-".into(),
                })
                .collect()
        })
        .collect();
    let mut widths: Vec<usize> = o.table.columns.iter().map(|c| c.len()).collect();
    for row in &csv_cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&o.table.columns);
    for row in &csv_cells {
        out.push_str(&line(row));
    }
    if let Some(Value::Object(m)) = &o.summary {
        for (k, v) in m {
            out.push_str(&format!("{k} = {v}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0:4:0.01").unwrap();
        assert_eq!(g.count, 401);
        let xs = g.points();
        assert_eq!(xs[200], 2.0);
        assert_eq!(xs[7], 0.07);
        assert_eq!(*xs.last().unwrap(), 4.0);
        assert_eq!(parse_grid("-1:1:0.5").unwrap().points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(parse_grid("0:4").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1:1e-9").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
