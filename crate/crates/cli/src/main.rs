//! `eulersign` command-line front end.
//!
//! Exit codes: 0 pass, 1 verification failure or oracle mismatch, 2 usage
//! error, 3 budget exceeded.

mod args;
mod commands;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use serde::Serialize;
use sha2::{Digest, Sha256};

use args::Cli;
use commands::{run, status_for, Status, SCHEMA_VERSION};

/// Everything needed to rerun a command and check its payload.
#[derive(Debug, Serialize)]
struct RunManifest<'a> {
    kind: &'static str,
    schema_version: &'static str,
    command_line: Vec<String>,
    config: &'a args::Command,
    seed: Option<u64>,
    tool_version: &'static str,
    /// Seconds since the Unix epoch; not part of the digest.
    timestamp: u64,
    output_sha256: String,
    exit_code: u8,
}

fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    std::fs::write(path, contents)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(status_for(&e) as u8);
        }
    };
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    let mut status = outcome.status;

    let written = match &cli.out {
        Some(path) => write_file(path, &outcome.payload),
        None => std::io::stdout().write_all(outcome.payload.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(Status::Usage as u8);
    }

    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            kind: "manifest",
            schema_version: SCHEMA_VERSION,
            command_line: std::env::args().collect(),
            config: &cli.command,
            seed: outcome.seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            output_sha256: format!("{:x}", Sha256::digest(outcome.payload.as_bytes())),
            exit_code: status as u8,
        };
        let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        json.push('\n');
        if let Err(e) = write_file(path, &json) {
            eprintln!("error: cannot write manifest: {e}");
            status = Status::Usage;
        }
    }
    ExitCode::from(status as u8)
}
