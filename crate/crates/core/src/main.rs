use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use spinorlab::cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    for d in &outcome.diagnostics {
        eprintln!("spinorlab: {d}");
    }
    if !outcome.report.is_empty() {
        let written = match &cli.output {
            Some(path) => std::fs::write(path, &outcome.report),
            None => std::io::stdout().lock().write_all(outcome.report.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("spinorlab: cannot write report: {e}");
            return ExitCode::from(Status::InvalidInput.code());
        }
    }
    ExitCode::from(outcome.status.code())
}
