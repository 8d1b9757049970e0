use std::process::ExitCode;

use balanced_words::cli::{main_with, Cli};
use clap::Parser;

fn main() -> ExitCode {
    match main_with(&Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
