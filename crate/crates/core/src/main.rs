use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use animat_sim::cli::{cmd_batch, cmd_run, cmd_validate, CliError, RunOptions};
use animat_sim::sim::Variant;

#[derive(Parser)]
#[command(
    name = "animat",
    version,
    about = "Run animat action selection scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Explore,
    Wander,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and print a summary.
    Run {
        /// Scenario file, or the name of a bundled fixture.
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        ticks: Option<u64>,
        /// Trace CSV output.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Action-pattern CSV output.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Timeline plot output.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run many seeds and report ticks to the first Drink.
    Batch {
        file: PathBuf,
        #[arg(long)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
        #[arg(long, value_enum, default_value = "explore")]
        variant: VariantArg,
    },
    /// Check a scenario and print its normalized form.
    Validate { file: PathBuf },
}

fn dispatch(command: Command) -> Result<String, CliError> {
    match command {
        Command::Run {
            file,
            seed,
            ticks,
            trace,
            pattern,
            svg,
        } => cmd_run(
            &file,
            &RunOptions {
                seed,
                ticks,
                trace,
                pattern,
                svg,
            },
        ),
        Command::Batch {
            file,
            runs,
            seed_base,
            variant,
        } => {
            let variant = match variant {
                VariantArg::Explore => Variant::Explore,
                VariantArg::Wander => Variant::Wander,
            };
            cmd_batch(&file, runs, seed_base, variant)
        }
        Command::Validate { file } => cmd_validate(&file),
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
    let outcome = std::panic::catch_unwind(|| dispatch(cli.command));
    match outcome {
        Ok(Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(1),
    }
}
