//! `wwlab`: run, list and describe registered scenarios.
//!
//! Exit codes: 0 success, 1 a checked bound failed, 2 config error,
//! 3 resource cap, 4 other failures.

mod config;
mod error;
mod output;
mod scenarios;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Config;
use error::CliError;
use output::Artifacts;

/// Worker-count variable. Results do not depend on it.
const WORKERS_ENV: &str = "WWLAB_WORKERS";

#[derive(Parser)]
#[command(name = "wwlab", version, about = "Numerical lab for uniform Wiener-Wintner averages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a TOML config, or by name with its defaults.
    Run {
        /// Path to a `.toml` config or a registered scenario name.
        target: String,
        /// Output directory; overrides `output` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List registered scenarios.
    List,
    /// Show what a scenario verifies and which options it takes.
    Describe { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wwlab: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::List => {
            for s in scenarios::SCENARIOS {
                println!("{:<26} {}", s.name, s.summary);
            }
            Ok(())
        }
        Command::Describe { name } => {
            let info = scenarios::find(&name).ok_or_else(|| CliError::Config(format!("unknown scenario {name:?}")))?;
            print!("{}", scenarios::describe(info));
            Ok(())
        }
        Command::Run { target, out } => run(&target, out),
    }
}

fn load(target: &str) -> Result<Config, CliError> {
    let path = Path::new(target);
    if target.ends_with(".toml") || path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {target}: {e}")))?;
        Config::parse(&text)
    } else {
        Ok(Config::named(target))
    }
}

fn init_workers() -> Result<(), CliError> {
    let Ok(v) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Compute(e.to_string()))
}

fn run(target: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    let cfg = load(target)?;
    let plan = scenarios::resolve(&cfg)?;
    init_workers()?;
    let dir = out
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("wwlab-out").join(&cfg.name));

    let report = plan.run()?;
    output::write_all(
        &dir,
        &Artifacts {
            scenario: plan.info.name,
            config_text: &cfg.canonical(),
            seeds: &plan.seeds,
            arithmetic: &plan.arithmetic,
            tables: &report.tables,
            bounds: report.bounds.as_deref(),
        },
    )?;
    println!("{}: wrote {}", plan.info.name, dir.display());
    for line in &report.summary {
        println!("  {line}");
    }
    match report.check {
        Some(c) if !c.passed => Err(CliError::Assertion(format!("{}: {}", plan.info.name, c.detail))),
        Some(c) => {
            println!("  check passed: {}", c.detail);
            Ok(())
        }
        None => Ok(()),
    }
}
