use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use munorm::{run, Cli, CliError};

const EXIT_INVALID_INPUT: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INVALID_INPUT);
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("munorm: one or more checks failed");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(e) => {
            eprintln!("munorm: {e}");
            ExitCode::from(EXIT_INVALID_INPUT)
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let report = run(cli.command, &cli.config)?;
    let text = report.render(cli.config.format)?;
    match &cli.config.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })?;
        }
    }
    Ok(report.passed)
}
