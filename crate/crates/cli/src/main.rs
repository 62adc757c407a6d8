mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Format;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.tsv {
        Format::Tsv
    } else {
        Format::Text
    };
    match commands::run(&cli.command, format) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.rendered.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if out.status == commands::Status::ClaimFailed {
                eprintln!("CLAIM FAILED: {}", out.failure_note);
            }
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
