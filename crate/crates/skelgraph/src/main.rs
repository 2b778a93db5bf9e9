use std::process::ExitCode;

use clap::Parser;
use skelgraph::cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) | CliError::Runtime(msg) => eprintln!("skelgraph: {msg}"),
                CliError::Mismatch => eprintln!("skelgraph: topologies differ"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
