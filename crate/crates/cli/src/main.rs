use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dworkbench::commands::EXIT_VERIFICATION_FAILED;
use dworkbench::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.output.as_bytes()).is_err() {
                return ExitCode::from(EXIT_VERIFICATION_FAILED);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION_FAILED)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
