//! `asymtree` — experiments on the large-scale geometry of the
//! hyperbolic plane: exact tree-metric verification, convergence
//! tables for the rescaled distance, and levelled-number decomposition.
//!
//! Exit codes: 0 all checks passed, 1 a property or threshold was
//! violated, 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use asymtree_core::correspond::{self, ConvergenceRow};
use asymtree_core::hyperbolic::polar_distance_log_gap;
use asymtree_core::levelled::parse_levelled;
use asymtree_core::tree::Profile;

mod report;
mod verify;

use report::Format;

const SEED_ENV: &str = "ASYMTREE_SEED";
const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "asymtree", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact metric/tree property suites and report counts.
    VerifyMetric {
        /// Trials per property (must be at least 1).
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        /// RNG seed; overrides the ASYMTREE_SEED environment variable.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the rescaled-distance error over the parameter grid.
    ConvergenceGrid {
        #[command(flatten)]
        scales: ScaleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare two circle-topped profile files across scales.
    EmbedPair {
        /// First profile (JSON, kind F).
        a: PathBuf,
        /// Second profile (JSON, kind F).
        b: PathBuf,
        /// Largest admissible error at the final scale.
        #[arg(long, default_value_t = 0.1)]
        threshold: f64,
        #[command(flatten)]
        scales: ScaleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the bundled four-profile configuration across scales.
    SubconeDemo {
        #[command(flatten)]
        scales: ScaleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decompose a levelled-number expression, e.g. "3*u^0 + -2*u^1/2".
    Decompose {
        expr: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct ScaleArgs {
    /// Comma-separated strictly increasing scales, each >= 1.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = correspond::DEFAULT_SCALES)]
    scales: Vec<f64>,
}

impl ScaleArgs {
    fn validated(&self) -> Result<&[f64]> {
        if self.scales.is_empty() {
            bail!("--scales must not be empty");
        }
        if self.scales.iter().any(|n| !n.is_finite() || *n < 1.0) {
            bail!("every scale must be a finite value >= 1");
        }
        if self.scales.windows(2).any(|w| w[0] >= w[1]) {
            bail!("--scales must be strictly increasing");
        }
        Ok(&self.scales)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, content)
                .with_context(|| format!("writing {}", path.display()))?,
            None => print!("{content}"),
        }
        Ok(())
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text
            .parse()
            .with_context(|| format!("{SEED_ENV} must be an unsigned integer, got `{text}`")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn load_profile_f(path: &PathBuf) -> Result<asymtree_core::tree::ProfileF> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let profile =
        Profile::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    match profile {
        Profile::F(p) => Ok(p),
        other => bail!(
            "{}: expected a profile of kind F, found kind {}",
            path.display(),
            other.kind()
        ),
    }
}

/// Whether any check failed (exit 1) — as opposed to hard errors
/// (exit 2), which surface as `Err`.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::VerifyMetric {
            trials,
            seed,
            output,
        } => {
            let seed = resolve_seed(seed)?;
            let results = verify::run_all(seed, trials);
            let violations: u32 = results.iter().map(|r| r.violations).sum();
            output.emit(&report::verify_report(&results, output.format))?;
            Ok(violations > 0)
        }
        Command::ConvergenceGrid { scales, output } => {
            let scales = scales.validated()?;
            let (cells, summary) = convergence_grid(scales);
            output.emit(&report::grid_report(&cells, &summary, output.format))?;
            Ok(false)
        }
        Command::EmbedPair {
            a,
            b,
            threshold,
            scales,
            output,
        } => {
            let scales = scales.validated()?;
            let pa = load_profile_f(&a)?;
            let pb = load_profile_f(&b)?;
            let mut rows = Vec::new();
            for &n in scales {
                rows.push(correspond::pair_error(&pa, &pb, n)?);
            }
            output.emit(&report::rows_report(&rows, output.format))?;
            let final_error = rows.last().expect("scales nonempty").error;
            Ok(final_error > threshold)
        }
        Command::SubconeDemo { scales, output } => {
            let scales = scales.validated()?;
            let rows = correspond::subcone_witness(&correspond::demo_profiles(), scales)?;
            output.emit(&report::rows_report(&rows, output.format))?;
            Ok(false)
        }
        Command::Decompose { expr, output } => {
            let number = parse_levelled(&expr)?;
            output.emit(&report::spectrum_report(&number.decompose(), output.format))?;
            Ok(false)
        }
    }
}

/// One grid cell of the convergence experiment.
pub(crate) struct GridCell {
    pub r1: f64,
    pub r2: f64,
    pub phi: f64,
    pub scale: f64,
    pub limit: f64,
    pub scaled: f64,
    pub error: f64,
}

pub(crate) struct GridSummary {
    pub scale: f64,
    pub max_error: f64,
}

fn convergence_grid(scales: &[f64]) -> (Vec<GridCell>, Vec<GridSummary>) {
    let grid: Vec<f64> = (1..=6).map(|k| 0.5 * k as f64).collect();
    let mut cells = Vec::with_capacity(grid.len().pow(3) * scales.len());
    let mut summary: Vec<GridSummary> = scales
        .iter()
        .map(|&scale| GridSummary {
            scale,
            max_error: 0.0,
        })
        .collect();
    for &r1 in &grid {
        for &r2 in &grid {
            for &phi in &grid {
                for (i, &n) in scales.iter().enumerate() {
                    let limit = asymtree_core::hyperbolic::tree_limit_estimate(r1, r2, phi);
                    let scaled = polar_distance_log_gap(n * r1, n * r2, -n * phi) / n;
                    let error = (scaled - limit).abs();
                    summary[i].max_error = summary[i].max_error.max(error);
                    cells.push(GridCell {
                        r1,
                        r2,
                        phi,
                        scale: n,
                        limit,
                        scaled,
                        error,
                    });
                }
            }
        }
    }
    (cells, summary)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

// used by report.rs for row formatting
pub(crate) fn format_rows(rows: &[ConvergenceRow]) -> Vec<[String; 5]> {
    rows.iter()
        .map(|r| {
            [
                format!("{}-{}", r.pair.0, r.pair.1),
                format!("{}", r.scale),
                format!("{}", asymtree_core::rat::to_f64(&r.tree_delta)),
                format!("{}", r.hyper_scaled),
                format!("{}", r.error),
            ]
        })
        .collect()
}
