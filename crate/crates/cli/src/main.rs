//! `dhn`: exact double Hurwitz numbers, closed forms, chamber polynomials and
//! wall crossing from the command line.

mod commands;
mod config;
mod error;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, JobArgs, JobConfig};
use error::CliError;

#[derive(Parser)]
#[command(
    name = "dhn",
    version,
    about = "Exact double Hurwitz numbers and their generating series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML file with defaults for the job flags (flags win)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result to FILE instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// H^r(μ, ν) from the closed form
    Hurwitz {
        #[command(flatten)]
        job: JobArgs,
        /// Use the character sum instead; works on walls, where it counts
        /// disconnected covers
        #[arg(long)]
        oracle: bool,
    },
    /// H^r(μ, ν) from the character sum
    Oracle {
        #[command(flatten)]
        job: JobArgs,
    },
    /// The commutation patterns and the closed form of H_{μ,ν}(z)
    ClosedForm {
        #[command(flatten)]
        job: JobArgs,
    },
    /// H_{μ,ν}(z) through z^N (default 10) and the numbers it encodes
    Series {
        #[command(flatten)]
        job: JobArgs,
    },
    /// Chamber signature, φ ordering and product formula
    Chamber {
        #[command(flatten)]
        job: JobArgs,
    },
    /// The chamber polynomial of genus g with its structural checks
    Poly {
        #[command(flatten)]
        job: JobArgs,
        /// In-chamber points used for the positivity check
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Both sides of the wall-crossing formula through z^N (default 10)
    Wallcross {
        #[command(flatten)]
        job: JobArgs,
        /// Wall as 1-based index sets I/J, e.g. `1/1` or `1,2/1`
        #[arg(long)]
        wall: String,
    },
    /// Run a verification suite: oracle-equivalence, fock-identities, spp,
    /// wallcross or all
    Verify {
        suite: String,
        /// Seed for chamber sampling
        #[arg(long)]
        seed: Option<u64>,
        /// Negate one commutator sign in every pattern; the suites must fail
        #[arg(long, hide = true)]
        negative_control: bool,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("HW_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "HW_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let file = match &cli.config {
        Some(path) => JobConfig::load(path)?,
        None => JobConfig::default(),
    };
    let output = match &cli.command {
        Command::Hurwitz { job, oracle } => {
            commands::hurwitz(&file.merge(job, cli.format), *oracle)
        }
        Command::Oracle { job } => commands::oracle(&file.merge(job, cli.format)),
        Command::ClosedForm { job } => commands::closed_form_cmd(&file.merge(job, cli.format)),
        Command::Series { job } => commands::series(&file.merge(job, cli.format)),
        Command::Chamber { job } => commands::chamber(&file.merge(job, cli.format)),
        Command::Poly { job, samples } => commands::poly(&file.merge(job, cli.format), *samples),
        Command::Wallcross { job, wall } => commands::wallcross(&file.merge(job, cli.format), wall),
        Command::Verify {
            suite,
            seed,
            negative_control,
        } => {
            let args = JobArgs {
                seed: *seed,
                ..JobArgs::default()
            };
            commands::verify(&file.merge(&args, cli.format), suite, *negative_control)
        }
    }?;
    match &cli.output {
        Some(path) => std::fs::write(path, &output.body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.body.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Internal(e.to_string()))?;
        }
    }
    if output.ok {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::CheckFailed) {
                eprintln!("dhn: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
