use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semibandit_cli::commands::{self, SweepOptions, TableFormat};
use semibandit_cli::config::SEED_ENV_VAR;
use semibandit_cli::CliError;

#[derive(Parser)]
#[command(
    name = "semibandit",
    version,
    about = "CombUCB1 experiments on combinatorial semi-bandits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Horizon n.
    #[arg(long, default_value_t = 100_000)]
    n: u64,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Master seed (overridden by SEMIBANDIT_SEED).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        config: PathBuf,
        /// Output directory, overriding `out_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads, overriding `jobs`.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Grid longest-path sweep over side lengths and sigmas.
    SweepGrid {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 6])]
        m: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.4, 0.8])]
        sigma: Vec<f64>,
        #[command(flatten)]
        common: SweepArgs,
    },
    /// K-path sweep over L, K and delta.
    SweepKpath {
        #[arg(long = "l", value_delimiter = ',', default_values_t = [8])]
        items: Vec<usize>,
        #[arg(long = "k", value_delimiter = ',', default_values_t = [2])]
        path_len: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.2])]
        delta: Vec<f64>,
        #[command(flatten)]
        common: SweepArgs,
    },
    /// Evaluate the regret bounds for given parameters.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Horizon, any real >= 1.
        #[arg(long)]
        n: f64,
        #[arg(long)]
        delta: Option<f64>,
        /// Per-item gaps, whitespace separated.
        #[arg(long)]
        gaps_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the fast self-checks.
    Verify {
        /// Samples per cell in the coverage check.
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn sweep_options(args: SweepArgs) -> Result<SweepOptions, CliError> {
    let seed = match std::env::var(SEED_ENV_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("{SEED_ENV_VAR}={v:?}: {e}")))?,
        Err(_) => args.seed,
    };
    Ok(SweepOptions {
        horizon: args.n,
        runs: args.runs,
        seed,
        jobs: args.jobs,
        out: args.out,
    })
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let stdout = &mut io::stdout().lock();
    match cli.command {
        Command::Run { config, out, jobs } => commands::cmd_run(&config, out.as_deref(), jobs, stdout),
        Command::SweepGrid { m, sigma, common } => {
            commands::cmd_sweep_grid(&m, &sigma, &sweep_options(common)?, stdout)
        }
        Command::SweepKpath {
            items,
            path_len,
            delta,
            common,
        } => commands::cmd_sweep_kpath(&items, &path_len, &delta, &sweep_options(common)?, stdout),
        Command::Bounds {
            k,
            l,
            n,
            delta,
            gaps_file,
            format,
        } => {
            let format = match format {
                Format::Text => TableFormat::Text,
                Format::Csv => TableFormat::Csv,
            };
            commands::cmd_bounds(k, l, n, delta, gaps_file.as_deref(), format, stdout)
        }
        Command::Verify { samples, seed } => commands::cmd_verify(samples, seed, stdout),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
