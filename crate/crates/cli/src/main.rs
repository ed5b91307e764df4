mod args;
mod commands;
mod exit;
mod experiment;
mod output;

use std::process::ExitCode;

use clap::Parser;
use lcalab_core::par::Execution;

use args::{Cli, Command};
use exit::CliResult;

fn execution(jobs: usize) -> Execution {
    if jobs == 1 {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    let exec = execution(cli.jobs);
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Query(a) => commands::query(a, exec),
        Command::Verify(a) => commands::verify(a, exec),
        Command::Stats(a) => commands::stats(a, exec),
        Command::Experiment(e) => experiment::run(e, exec),
    }
}

#[cfg(feature = "parallel")]
fn run(cli: &Cli) -> CliResult<()> {
    if cli.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
            .map_err(|e| exit::CliError::param(format!("--jobs: {e}")))?;
        return pool.install(|| dispatch(cli));
    }
    dispatch(cli)
}

#[cfg(not(feature = "parallel"))]
fn run(cli: &Cli) -> CliResult<()> {
    dispatch(cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lcalab: {e}");
            e.exit_code()
        }
    }
}
