mod args;
mod failure;
mod grid;
mod output;
mod table1;
mod validate;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    let outcome = match &cli.command {
        Command::Table1(a) => table1::run(a),
        Command::Pdf(a) => grid::pdf(a),
        Command::Cdf(a) => grid::cdf(a),
        Command::Approx(a) => grid::approx(a),
        Command::Validate(a) => validate::run(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}
