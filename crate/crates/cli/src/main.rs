use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cu2_cli::{execute, Cli, CliError, Format};

fn write_output(cli: &Cli, body: &str) -> Result<(), CliError> {
    let body = format!("{body}\n");
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli.command).and_then(|out| {
        let body = match cli.format {
            Format::Json => serde_json::to_string_pretty(&out.json).expect("JSON values serialize"),
            Format::Text => out.text,
        };
        write_output(&cli, &body)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&err.payload()).unwrap()),
                Format::Text => eprintln!("error: {}: {err}", err.name()),
            }
            ExitCode::from(err.exit_code())
        }
    }
}
