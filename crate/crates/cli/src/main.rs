mod args;
mod commands;
mod io;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Decide(a) => commands::decide(a),
        Command::Infer(a) => commands::infer(a),
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Reduce(a) => commands::reduce(a),
        Command::Gen(a) => commands::gen(a),
        Command::Transform(a) => commands::transform(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
