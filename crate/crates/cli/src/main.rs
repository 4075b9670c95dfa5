// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qlgt::{cmd_gates, cmd_run, cmd_sweep, cmd_verify, CliError};
use qudit_lgt::GateScheme;

/// Scenario runner for the hardcore-gluon SU(2) qudit simulator.
///
/// Exit codes: 0 success, 1 i/o, 2 parse or config error, 3 capacity,
/// 4 numerical failure.
#[derive(Parser)]
#[command(name = "qlgt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (or a run manifest) and write CSV + manifest.
    Run {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run a scenario once per value of a scalar field.
    Sweep {
        file: PathBuf,
        /// Dotted path of the field, e.g. `noise.delta_b`.
        #[arg(long)]
        axis: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        values: Vec<f64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the two-qudit gate count of a circuit.
    Gates {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nst: usize,
        #[arg(long, default_value = "full_ms")]
        scheme: GateScheme,
        #[arg(long, default_value_t = 1)]
        order: u8,
    },
    /// Rebuild the site tables from rishons and check the gauge constraints.
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qlgt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Run { file, seed, out } => {
            let files = cmd_run(&file, seed, &out)?;
            println!("{}", files.csv.display());
            println!("{}", files.manifest.display());
        }
        Command::Sweep { file, axis, values, out, jobs } => {
            let r = cmd_sweep(&file, &axis, &values, &out, jobs)?;
            println!("{}", r.aggregate_path.display());
        }
        Command::Gates { n, nst, scheme, order } => {
            println!("{}", cmd_gates(n, nst, scheme, order)?);
        }
        Command::Verify => {
            let (ok, lines) = cmd_verify();
            for l in lines {
                println!("{l}");
            }
            return Ok(if ok { 0 } else { 4 });
        }
    }
    Ok(0)
}
