mod cli;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use cli::{Cli, Command};
use commands::Status;

fn run(cli: &Cli) -> anyhow::Result<Status> {
    let g = &cli.global;
    match &cli.command {
        Command::Matrix { perm, minpoly, invariant_factors } => commands::matrix(g, perm, *minpoly, *invariant_factors),
        Command::Simtest { a, b, mode } => commands::simtest(g, a, b, *mode),
        Command::Classify { n, mode } => commands::classify_cmd(g, *n, *mode),
        Command::Verify(args) => commands::verify(g, args),
        Command::Extend { base, spec } => commands::extend(g, base, spec),
        Command::Dual { perm } => commands::dual(g, perm),
        Command::Graph { perm } => commands::graph(g, perm),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.global.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.into())
            .build()
            .map_err(anyhow::Error::from)
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
