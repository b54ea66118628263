//! `qzeta` command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage errors (bad flags, files or
//! parameters), 3 when the mathematics refuses (poles, divergence, no zero).

mod args;
mod commands;
mod output;
mod parse;

use std::fs;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Common};

/// A malformed request detected after flag parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<qzeta::Error>() {
        Some(e) if e.is_domain() => EXIT_DOMAIN,
        _ => EXIT_USAGE,
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let (report, common): (_, &Common) = match &cli.command {
        Command::Eval(a) => (commands::eval(a)?, &a.common),
        Command::Certify(a) => (commands::certify(a)?, &a.common),
        Command::Zero(a) => (commands::zero(a)?, &a.common),
        Command::Trajectory(a) => (commands::trajectory(a)?, &a.common),
        Command::Scan(a) => (commands::scan(a)?, &a.common),
        Command::Crystal(a) => (commands::crystal(a)?, &a.common),
        Command::Special(a) => (commands::special(a)?, &a.common),
        Command::CompareClassical(a) => (commands::compare_classical(a)?, &a.common),
    };
    let text = report.render(common.format);
    print!("{text}");
    if let Some(path) = &common.output {
        fs::write(path, &text).map_err(|e| UsageError(format!("writing {}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv = match args::expand_config(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
