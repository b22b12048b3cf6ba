use std::path::PathBuf;
use std::process::ExitCode;

use brane_gauge::{exit_code, parse_manifest, render, run_tasks, RunOptions};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "brane-gauge", version, about = "Verify gauge-field bounds for branes on projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a manifest and print the report.
    Run {
        manifest: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Čech truncation level (default: n + 3).
        #[arg(long = "cech-bound")]
        cech_bound: Option<u32>,
        /// Top degree for Hilbert-function output.
        #[arg(long = "max-degree", default_value_t = 8)]
        max_degree: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run {
        manifest,
        report,
        cech_bound,
        max_degree,
    } = cli.command;
    let text = match std::fs::read_to_string(&manifest) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {}", manifest.display(), e);
            return ExitCode::from(2);
        }
    };
    let parsed = match parse_manifest(&text) {
        Ok(m) => m,
        Err(d) => {
            eprintln!("{}: {}", manifest.display(), d);
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        cech_bound,
        max_degree,
        ..RunOptions::default()
    };
    let reports = run_tasks(&parsed, &opts);
    let out = render(parsed.n, &reports);
    match report {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, out) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out),
    }
    ExitCode::from(exit_code(&reports) as u8)
}
