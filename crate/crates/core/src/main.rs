use std::process::ExitCode;

use clap::Parser;

use pseudoherm::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    let code = cli::execute(&args);
    ExitCode::from(code)
}
