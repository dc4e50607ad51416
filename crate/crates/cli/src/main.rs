use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use commpoly_cli::{max_degree_from, run, Cli, CliError, MAX_DEGREE_ENV, SCHEMA_VERSION};
use serde_json::json;

// A closed stdout (e.g. piped into `head`) is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_error(json: bool, err: &CliError) {
    if json {
        emit(&err.to_json().to_string());
    } else {
        eprintln!("error: {err}");
    }
}

fn main() -> ExitCode {
    let wants_json = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if wants_json => {
            let err = json!({
                "schema": SCHEMA_VERSION,
                "error": { "kind": "usage", "message": e.kind().to_string(), "detail": e.to_string() },
            });
            emit(&err.to_string());
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    let env = std::env::var(MAX_DEGREE_ENV).ok();
    let outcome = max_degree_from(env.as_deref()).and_then(|d| run(&cli, d));
    match outcome {
        Ok(report) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&report.json).expect("json value"));
            } else {
                emit(&report.text);
            }
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            print_error(cli.json, &err);
            ExitCode::from(2)
        }
    }
}
