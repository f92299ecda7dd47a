use std::process::ExitCode;

use clap::Parser;
use massless_verify::cli::{execute, Cli};

fn main() -> ExitCode {
    execute(Cli::parse())
}
