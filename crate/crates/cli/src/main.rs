mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{CompareOptions, SweepOptions};
use config::{resolve_common, FileConfig, Merger};
use error::{CliError, CliResult};

fn run(cli: Cli, m: &mut Merger) -> CliResult<()> {
    let file = match &cli.common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let common = resolve_common(&cli.common, &file, m)?;
    let text = match cli.command {
        Command::Eval { lottery } => commands::eval(&common, &file, lottery.as_deref(), m)?,
        Command::Premia => commands::premia(&common)?,
        Command::Sweep { axis, from, to, steps } => {
            commands::sweep(&common, &file, SweepOptions { axis, from, to, steps }, m)?
        }
        Command::Convergence { premium, levels } => {
            commands::convergence(&common, &file, premium, levels, m)?
        }
        Command::Compare { utility2, weighting2, seed, quadruples } => commands::compare(
            &common,
            &file,
            CompareOptions { utility2, weighting2, seed, quadruples },
            m,
        )?,
    };
    output::emit(&text, common.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp
            | ErrorKind::DisplayVersion
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                let _ = e.print();
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    ExitCode::from(2)
                } else {
                    ExitCode::SUCCESS
                };
            }
            _ => {
                let text = e.to_string();
                let first = text.lines().next().unwrap_or("");
                let msg = first.strip_prefix("error: ").unwrap_or(first);
                eprintln!("{}", CliError::Input(msg.to_string()));
                return ExitCode::from(2);
            }
        },
    };
    let mut m = Merger::default();
    let result = run(cli, &mut m);
    for w in &m.warnings {
        eprintln!("warning: {w}");
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
