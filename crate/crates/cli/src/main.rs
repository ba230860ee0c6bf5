//! `biquant`: command-line front end for the graph calculus and the
//! reduction checks.
//!
//! Exit codes: 0 when every check passes, 1 on a mismatch or failed check,
//! 2 on bad input, exceeded caps, or an insufficient weight backend.

mod args;
mod error;
mod run;

use args::Cli;
use clap::Parser;
use run::Outcome;
use std::io::Write;
use std::process::ExitCode;

/// The invocation minus `--output`, so reports written to different files
/// stay byte-identical.
fn header(cli: &Cli) -> String {
    let mut argv = std::env::args().skip(1);
    let mut shown = Vec::new();
    while let Some(a) = argv.next() {
        if a == "--output" {
            argv.next();
        } else if !a.starts_with("--output=") {
            shown.push(a);
        }
    }
    let seed = cli.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    format!("# biquant {} seed={seed}", shown.join(" "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut text = header(&cli);
    text.push('\n');
    for line in &report.lines {
        text.push_str(line);
        text.push('\n');
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    match report.outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail => ExitCode::from(1),
    }
}
