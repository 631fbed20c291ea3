use std::process::ExitCode;

use clap::Parser;
use metric_svf_cli::{run, Cli};

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
