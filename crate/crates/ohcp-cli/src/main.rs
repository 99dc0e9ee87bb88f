use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ohcp_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = outcome.render();
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(why) = &outcome.exhausted {
        eprintln!("budget exhausted: {why}");
    }
    if let Some(why) = &outcome.failed {
        eprintln!("check failed: {why}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
