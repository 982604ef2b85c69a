use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use knotcount_cli::{execute, exit, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut buf = Vec::new();
    let result = execute(&cli, &mut buf);
    // `check` fails after writing its report, so flush the buffer either way
    let code = match result {
        Ok(()) => exit::OK,
        Err(e) => {
            if !cli.quiet {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    };
    if io::stdout().write_all(&buf).and_then(|_| io::stdout().flush()).is_err() {
        return ExitCode::from(exit::FAILURE as u8);
    }
    ExitCode::from(code as u8)
}
