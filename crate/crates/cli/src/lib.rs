//! Front end for the pregular engine: spec parsing, reports and the
//! `invariants`, `check`, `tables` and `sweep` commands.

pub mod commands;
pub mod config;
pub mod report;
pub mod spec;
pub mod tables;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

pub use commands::{cmd_check, cmd_invariants, cmd_sweep, PiChoice, Suite};
pub use config::Config;
pub use report::{Format, Outcome, Report};
pub use spec::{parse_spec, render, SpecError};
pub use tables::cmd_tables;

/// Exit status for malformed input: bad spec, flag or config.
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "pregular",
    version,
    about = "p-regular class counts of finite permutation groups"
)]
pub struct Cli {
    /// key = value settings file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format: md, json or csv
    #[arg(long, global = true, default_value = "md")]
    pub format: Format,
    /// Largest group order enumerated element by element
    #[arg(long, global = true)]
    pub limit: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args, Default)]
pub struct PiArgs {
    /// Explicit prime set, e.g. 2,3
    #[arg(long, value_delimiter = ',')]
    pub pi: Option<Vec<u64>>,
    /// Complement of a prime set, e.g. 2 for the odd primes
    #[arg(long = "pi-complement", value_delimiter = ',')]
    pub pi_complement: Option<Vec<u64>>,
    /// A single prime; selects p' where a set is expected
    #[arg(long)]
    pub p: Option<u64>,
}

impl PiArgs {
    fn choice(&self) -> PiChoice {
        PiChoice {
            pi: self.pi.clone(),
            complement: self.pi_complement.clone(),
            p: self.p,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orders, class counts and d_pi of one group
    Invariants {
        spec: String,
        #[command(flatten)]
        pi: PiArgs,
    },
    /// Check a theorem on one group: 1, 2, 3, 4, L21, P63, P64, R32 or dixon
    Check {
        theorem: String,
        spec: String,
        #[command(flatten)]
        pi: PiArgs,
    },
    /// Regenerate a table: table1, alternating, sporadic-small, lie-grid or tori
    Tables {
        name: String,
        #[arg(long = "grid-qmax")]
        grid_qmax: Option<u64>,
        #[arg(long = "grid-nmax")]
        grid_nmax: Option<u64>,
    },
    /// Run a checker suite over the built-in catalog: theorems or lemma
    Sweep {
        #[arg(long, default_value = "theorems")]
        suite: Suite,
        #[arg(long = "max-prime")]
        max_prime: Option<u64>,
        #[arg(long = "max-order")]
        max_order: Option<u64>,
    },
}

/// Why a command could not run at all.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; the message is ready to print.
    Usage(String),
    Other(anyhow::Error),
}

fn spec_arg(text: &str) -> std::result::Result<pregular_core::construct::GroupSpec, Failure> {
    parse_spec(text)
        .map_err(|e| Failure::Usage(format!("invalid group spec: {}", e.annotate(text))))
}

fn resolve_config(cli: &Cli) -> Result<Config> {
    let mut config = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    config.apply_env()?;
    if let Some(n) = cli.limit {
        config.limits.enumeration = n;
    }
    if let Command::Tables {
        grid_qmax,
        grid_nmax,
        ..
    } = &cli.command
    {
        config.grid_qmax = grid_qmax.or(config.grid_qmax);
        config.grid_nmax = grid_nmax.unwrap_or(config.grid_nmax);
    }
    if let Command::Sweep {
        max_prime,
        max_order,
        ..
    } = &cli.command
    {
        config.max_prime = max_prime.unwrap_or(config.max_prime);
        config.lemma_max_order = max_order.unwrap_or(config.lemma_max_order);
    }
    Ok(config)
}

/// Runs a parsed command line and returns the report.
pub fn run(cli: &Cli) -> std::result::Result<Report, Failure> {
    let config = resolve_config(cli).map_err(|e| Failure::Usage(format!("{e:#}")))?;
    let usage = |e: anyhow::Error| {
        let is_input = e.downcast_ref::<pregular_core::Error>().is_some_and(|c| {
            matches!(
                c,
                pregular_core::Error::InvalidParameter(_)
                    | pregular_core::Error::Parse { .. }
                    | pregular_core::Error::Io(_)
            )
        });
        if is_input || e.downcast_ref::<pregular_core::Error>().is_none() {
            Failure::Usage(format!("{e:#}"))
        } else {
            Failure::Other(e)
        }
    };
    match &cli.command {
        Command::Invariants { spec, pi } => {
            cmd_invariants(&spec_arg(spec)?, &pi.choice(), &config).map_err(usage)
        }
        Command::Check { theorem, spec, pi } => {
            cmd_check(theorem, &spec_arg(spec)?, &pi.choice(), &config).map_err(usage)
        }
        Command::Tables { name, .. } => cmd_tables(name, &config).map_err(usage),
        Command::Sweep { suite, .. } => cmd_sweep(*suite, &config).map_err(usage),
    }
}

/// Parses `args`, runs the command, and returns the rendered output and exit code.
pub fn run_args<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return (e.to_string(), code);
        }
    };
    match run(&cli) {
        Ok(report) => (report.render(cli.format), report.outcome.code()),
        Err(Failure::Usage(msg)) => (format!("error: {msg}\n"), EXIT_USAGE),
        Err(Failure::Other(e)) => (format!("error: {e:#}\n"), EXIT_USAGE),
    }
}
