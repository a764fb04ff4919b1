use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use etgrs_cli::config::{parse_list, Format, RunConfig};
use etgrs_cli::{exit, reproduce, CliError, MatrixWhich, Report, SearchConfig};
use etgrs_core::Verdict;

/// Extended twisted GRS codes: construction, MDS/AMDS/NMDS classification
/// and non-GRS certification.
#[derive(Parser, Debug)]
#[command(name = "etgrs", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "table", value_parser = ["table", "json"])]
    format: String,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timings: bool,
    /// Enumeration budget (codewords or column subsets).
    #[arg(long, global = true, env = "ETGRS_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one code.
    Classify {
        #[command(flatten)]
        code: CodeArgs,
        /// Element `eta` (nonzero), e.g. `9` or `g^2`.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long, value_parser = ["theorems", "brute", "both"])]
        mode: Option<String>,
    },
    /// Classify every (eta, delta) pair of a sweep.
    Search {
        #[command(flatten)]
        code: CodeArgs,
        /// `all`, `nonzero`, or a comma-separated list (zero is never used).
        #[arg(long, default_value = "all")]
        eta: String,
        /// `all`, `nonzero`, or a comma-separated list.
        #[arg(long, default_value = "all")]
        delta: String,
        /// Show only rows with this verdict.
        #[arg(long, value_parser = ["MDS", "AMDS", "NMDS", "OTHER"])]
        only: Option<String>,
        /// Add the dual-AMDS columns.
        #[arg(long)]
        dual_amds: bool,
        /// Worker threads.
        #[arg(long)]
        workers: Option<usize>,
        /// Also compute distances exhaustively.
        #[arg(long)]
        brute: bool,
    },
    /// Check a registered scenario against its claimed outcomes.
    Reproduce {
        /// Scenario id (1-4), name, or `all`.
        scenario: String,
    },
    /// Print a matrix of the construction.
    Matrix {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long, value_enum)]
        which: MatrixWhich,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// JSON configuration file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `13`, `2^3`, `8`, or `2^3:1,1,0,1` (modulus coefficients, constant first).
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated evaluation points.
    #[arg(long)]
    alpha: Option<String>,
    /// Comma-separated column multipliers (default all ones).
    #[arg(long)]
    v: Option<String>,
}

impl CodeArgs {
    fn config(&self, eta: Option<&str>, delta: Option<&str>, budget: Option<u64>) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            alpha: self.alpha.as_deref().map(parse_list),
            v: self.v.as_deref().map(parse_list),
            eta: eta.map(Into::into),
            delta: delta.map(Into::into),
            mode: None,
            budget,
            format: None,
        };
        Ok(file.merge(flags))
    }
}

fn run(cli: &Cli) -> Result<(Report, Option<Format>), CliError> {
    match &cli.command {
        Command::Classify { code, eta, delta, mode } => {
            let mut cfg = code.config(eta.as_deref(), delta.as_deref(), cli.budget)?;
            cfg.mode = mode.clone().or(cfg.mode);
            let fmt = cfg.format;
            Ok((etgrs_cli::classify(&cfg)?, fmt))
        }
        Command::Search {
            code,
            eta,
            delta,
            only,
            dual_amds,
            workers,
            brute,
        } => {
            let run = code.config(None, None, cli.budget)?;
            let fmt = run.format;
            let only = only
                .as_deref()
                .map(|s| s.parse::<Verdict>())
                .transpose()
                .map_err(|e| CliError::usage(e.to_string()))?;
            let cfg = SearchConfig {
                run,
                eta: eta.parse()?,
                delta: delta.parse()?,
                only,
                dual_amds: *dual_amds,
                workers: *workers,
                brute: *brute,
            };
            Ok((etgrs_cli::search(&cfg)?, fmt))
        }
        Command::Reproduce { scenario } => {
            let budget = cli.budget.unwrap_or_else(etgrs_core::code::default_budget);
            Ok((reproduce::command(scenario, budget)?, None))
        }
        Command::Matrix {
            code,
            eta,
            delta,
            which,
        } => {
            let cfg = code.config(eta.as_deref(), delta.as_deref(), cli.budget)?;
            let fmt = cfg.format;
            Ok((etgrs_cli::matrix(&cfg, *which)?, fmt))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { exit::OK as u8 });
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok((report, file_format)) => {
            let flag: Format = cli.format.parse().expect("clap restricts the values");
            // A format in the config file applies only when the flag is left at its default.
            let format = if flag == Format::Table { file_format.unwrap_or(flag) } else { flag };
            let elapsed = cli.timings.then(|| start.elapsed());
            print!("{}", report.render(format, elapsed));
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::USAGE as u8)
        }
    }
}
