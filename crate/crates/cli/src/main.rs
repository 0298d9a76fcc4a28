use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kvcs::cache::CACHE_ENV;
use kvcs::commands::*;
use kvcs::criteria::Params;
use kvcs::{CliError, Config, Format, Report};
use kvcs_core::kv::PentagonOrdering;
use kvcs_core::linalg::Rational;
use kvcs_core::simplicial::Variant;

#[derive(Parser)]
#[command(
    name = "kvcs",
    version,
    about = "Exact Kashiwara-Vergne and Chern-Simons descent computations"
)]
struct Cli {
    /// Truncation: highest letter count kept.
    #[arg(long, global = true, default_value_t = 6)]
    degree: usize,
    #[arg(long, global = true, default_value = "nonabelian")]
    variant: Variant,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached solver output.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache for this run.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Expert override of the pentagon ordering (recorded in the report header).
    #[arg(long, global = true)]
    pentagon_ordering: Option<PentagonOrdering>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated BCH series of two Lie series.
    Bch { x: String, y: String },
    /// Solve the first KV equation.
    KvSolve,
    /// Descent chain for the solver's solution.
    Descent {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        s: Rational,
    },
    /// Associator, pentagon and twist residuals.
    Pentagon,
    /// Cohomology of a row of the double complex.
    Cohomology {
        #[arg(long)]
        drdeg: u32,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        letters: usize,
    },
    /// Every acceptance criterion.
    VerifyAll {
        /// Truncation for the descent criteria.
        #[arg(long, default_value_t = 5)]
        descent_degree: usize,
        #[arg(long, default_value_t = Params::default().seed)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let mut cfg = Config::new(cli.degree)?;
    cfg.variant = cli.variant;
    cfg.format = cli.format;
    cfg.cache_dir = if cli.no_cache { None } else { cli.cache_dir };
    if let Some(o) = cli.pentagon_ordering {
        cfg.ledger.pentagon = o;
    }
    for o in cfg.ledger.overrides() {
        eprintln!("ledger override: {o}");
    }
    match cli.command {
        Command::Bch { x, y } => cmd_bch(&cfg, &x, &y),
        Command::KvSolve => cmd_kv_solve(&cfg),
        Command::Descent { s } => cmd_descent(&cfg, &s),
        Command::Pentagon => cmd_pentagon(&cfg),
        Command::Cohomology {
            drdeg,
            level,
            letters,
        } => cmd_cohomology(&cfg, drdeg, level, letters),
        Command::VerifyAll {
            descent_degree,
            seed,
        } => {
            if descent_degree < 2 {
                return Err(CliError::Usage(
                    "--descent-degree must be at least 2".into(),
                ));
            }
            let p = Params {
                degree: cfg.degree,
                descent_degree,
                ledger: cfg.ledger.clone(),
                cache_dir: cfg.cache_dir.clone(),
                seed,
            };
            cmd_verify_all(&cfg, &p)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
