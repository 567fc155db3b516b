use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fracmem::cli::{execute, output_path, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("fracmem: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match output_path(&cli) {
        Some(path) => std::fs::write(path, &outcome.artifact),
        None => std::io::stdout().lock().write_all(outcome.artifact.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("fracmem: IoError: {e}");
        return ExitCode::from(2);
    }
    if let Some(report) = &outcome.report {
        eprint!("{report}");
    }
    ExitCode::from(outcome.status as u8)
}
