//! `spinframe` command-line driver.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

mod args;
mod commands;
mod report;

use std::io::{IsTerminal, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

use spinframe::samplers::GENERATOR_ID;

use args::{Cli, Command, OutputFormat};
use commands::Outcome;
use report::{RunConfig, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] spinframe::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let common = &cli.common;
    let seed = match common.seed {
        Some(seed) => seed,
        None if cli.command.samples() => {
            let seed = rand::random();
            eprintln!("seed: {seed}");
            seed
        }
        // Unused; fixed so seedless commands still produce reproducible output.
        None => 0,
    };
    let to_rad = |x: f64| if common.degrees { x.to_radians() } else { x };
    let format = common
        .format
        .unwrap_or_else(|| cli.command.default_format());
    if common.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }

    let mut config = RunConfig {
        subcommand: cli.command.name().to_string(),
        angles: Vec::new(),
        degrees: common.degrees,
        n_trials: common.trials,
        master_seed: seed,
        output_format: format,
        output_path: common.out.as_ref().map(|p| p.display().to_string()),
        model: None,
        steps: None,
        runs: None,
    };

    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(threads) = common.threads {
            if threads == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            builder = builder.num_threads(threads);
        }
        builder
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?
    };

    let started = Instant::now();
    let outcome: Outcome = pool.install(|| match &cli.command {
        Command::Verify => Ok(commands::cmd_verify()),
        Command::Correlate { theta } => {
            config.angles = vec![to_rad(*theta)];
            commands::cmd_correlate(config.angles[0], common.trials, seed)
        }
        Command::Bell { a, b, c, model } => {
            let angles = [to_rad(*a), to_rad(*b), to_rad(*c)];
            config.angles = angles.to_vec();
            config.model = Some(*model);
            commands::cmd_bell(angles, common.trials, *model, seed)
        }
        Command::Sweep {
            theta_min,
            theta_max,
            steps,
        } => {
            let lo = to_rad(*theta_min);
            let hi = theta_max.map(to_rad).unwrap_or(std::f64::consts::PI);
            config.angles = vec![lo, hi];
            config.steps = Some(*steps);
            let grid = commands::sweep_grid(lo, hi, *steps)?;
            commands::cmd_sweep(&grid, common.trials, seed)
        }
        Command::Envelope { runs } => {
            config.runs = Some(*runs);
            commands::cmd_envelope(*runs, seed)
        }
        Command::Rotate { alpha, basis } => {
            config.angles = vec![to_rad(*alpha), to_rad(*basis)];
            commands::cmd_rotate(config.angles[0], config.angles[1])
        }
    })?;

    let duration_ms = if common.no_timing {
        0.0
    } else {
        started.elapsed().as_secs_f64() * 1e3
    };
    let report = RunReport {
        config,
        generator: GENERATOR_ID.to_string(),
        results: outcome.records,
        duration_ms,
    };

    let color = format == OutputFormat::Table
        && common.out.is_none()
        && std::env::var_os("NO_COLOR").is_none()
        && std::io::stdout().is_terminal();
    let text = report.render(format, color);
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if e.exit_code() == 2 {
                eprintln!("\nFor more information, try '--help'.");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
