mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use report::Outcome;

/// Error raised for bad flag combinations; maps to exit code 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 1;
    }
    match e.downcast_ref::<squeeze_core::Error>() {
        Some(squeeze_core::Error::InvalidArgument(_)) => 1,
        Some(squeeze_core::Error::Inconclusive(_)) => 2,
        _ => 3,
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let common = &cli.common;
    let prec = commands::precision(common).map_err(|e| usage(e.to_string()))?;
    let (name, config, out): (&str, serde_json::Value, Outcome) = match &cli.command {
        Command::Deficiency(a) => (
            "deficiency",
            serde_json::to_value(a)?,
            commands::deficiency(a, &prec)?,
        ),
        Command::Cinfty(a) => (
            "cinfty",
            serde_json::to_value(a)?,
            commands::cinfty(a, &prec)?,
        ),
        Command::Expgroup(a) => (
            "expgroup",
            serde_json::to_value(a)?,
            commands::expgroup(a, &prec)?,
        ),
        Command::Sbmodel(a) => ("sbmodel", serde_json::to_value(a)?, commands::sbmodel(a)?),
    };
    let mut config = config;
    config["digits"] = prec.digits.into();
    config["format"] = serde_json::to_value(common.format)?;
    report::write(name, &config, &out, common.format, common.output.as_deref())?;
    Ok(out.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
