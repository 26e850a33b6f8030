mod args;
mod commands;

use args::{Cli, Command};
use clap::Parser;
use mmi_core::Error;
use std::process::ExitCode;

/// Exit codes: 0 ok, 1 verification failure, 2 usage, 3 numeric, 4 identifiability.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_)
        | Error::UnsupportedDimension(_)
        | Error::UnsupportedMethod(_)
        | Error::Data(_) => 2,
        Error::Quadrature { .. } | Error::NonConvergence { .. } | Error::Resource(_) => 3,
        Error::Identifiability(_) => 4,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    let result = match &cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Verify(a) => commands::verify(a),
        Command::Fit(a) => commands::fit(a),
        Command::Coherence(a) => commands::coherence(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
