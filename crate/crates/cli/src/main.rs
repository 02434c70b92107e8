//! `lagfrac`: command-line front end for lagfrac-core.

mod args;
mod error;
mod run;
mod settings;
mod table;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match settings::resolve(&cli.command).and_then(|cfg| run::execute(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lagfrac: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
