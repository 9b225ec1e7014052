use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ecoand::oracle::GridSpec;
use ecoand_cli::{cmd_compare, cmd_plan, cmd_sweep, cmd_verify, load, CliError};

#[derive(Debug, Parser)]
#[command(version, about = "Time and energy optimal approach to a signalised intersection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plan the approach and print the chosen profile
    Plan {
        scenario: PathBuf,
        /// Write sampled t,x,v,u rows to this CSV file
        #[arg(long)]
        trajectory: Option<PathBuf>,
        /// Sampling step for --trajectory, in seconds
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Re-plan over a range of trade-off weights and print CSV
    Sweep {
        scenario: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        rho_min: f64,
        #[arg(long, default_value_t = 1.0)]
        rho_max: f64,
        /// Number of rows, endpoints included
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
    /// Compare the planned approach with the rule-based human driver
    Compare { scenario: PathBuf },
    /// Check the planned approach against the dynamic-programming oracle
    Verify {
        scenario: PathBuf,
        #[arg(long, default_value_t = GridSpec::default().dt)]
        dt: f64,
        #[arg(long, default_value_t = GridSpec::default().dv)]
        dv: f64,
        #[arg(long, default_value_t = GridSpec::default().dx)]
        dx: f64,
        #[arg(long, default_value_t = GridSpec::default().control_levels)]
        levels: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Plan { scenario, trajectory, step } => {
            let s = load(&scenario)?;
            cmd_plan(&mut out, &s, trajectory.as_deref().map(|p| (p, step)))
        }
        Command::Sweep { scenario, rho_min, rho_max, steps } => {
            cmd_sweep(&mut out, &load(&scenario)?, rho_min, rho_max, steps)
        }
        Command::Compare { scenario } => cmd_compare(&mut out, &load(&scenario)?),
        Command::Verify { scenario, dt, dv, dx, levels } => {
            let grid = GridSpec { dt, dv, dx, control_levels: levels };
            cmd_verify(&mut out, &load(&scenario)?, grid)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
