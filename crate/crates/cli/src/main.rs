use std::process::ExitCode;

use clap::Parser;

use motif_swarm_cli::cli::{Cli, Command};
use motif_swarm_cli::{exit, landscape_command, oracle_command, run_command, sample_command, HarnessError};

fn dispatch(cli: &Cli) -> Result<i32, HarnessError> {
    match &cli.command {
        Command::Run(args) => {
            let report = run_command(&args.to_spec()?)?;
            let o = &report.outcome;
            eprintln!(
                "{} iterations, {} evaluations, {} restarts, {} motifs{}",
                o.iterations,
                o.stats.evaluations,
                o.stats.restarts,
                o.motifs.len(),
                if report.reached_reference { ", reference reached" } else { "" }
            );
            if o.motifs.shortfall > 0 {
                eprintln!("warning: only {} of the requested motifs found", o.motifs.len());
            }
            Ok(report.exit_code)
        }
        Command::Oracle(args) => {
            let report = oracle_command(&args.to_spec())?;
            eprintln!(
                "{} evaluations in {} ms",
                report.sidecar.evaluations, report.sidecar.elapsed_ms
            );
            Ok(report.exit_code)
        }
        Command::Sample(args) => {
            sample_command(&args.to_spec())?;
            Ok(exit::SUCCESS)
        }
        Command::Landscape(args) => {
            let (spec, fixed, rows, cols) = args.to_parts()?;
            landscape_command(&spec, fixed, rows, cols)?;
            Ok(exit::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
