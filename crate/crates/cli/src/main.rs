use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use tricount_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let result = tricount_cli::run(&cli.command, &mut stdout.lock(), &mut stderr.lock());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let _ = writeln!(io::stderr(), "{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
