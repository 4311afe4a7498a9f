use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use footprint_cli::{load_job, run, RunError, RunOptions};
use footprint_core::{LocalityCheck, DEFAULT_MAX_ELEMENTS};

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Verify {
    Off,
    Debug,
    Always,
}

/// Computes footprints, bases and specifications for programs over finite
/// separation algebras.
#[derive(Parser, Debug)]
#[command(name = "footprint", version)]
struct Args {
    /// Job file (JSON) with `algebra`, `programs`, `specs` and `queries`.
    #[arg(long)]
    job: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Omit timing so that identical jobs give byte-identical reports.
    #[arg(long)]
    canonical: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    /// Re-check locality of program compositions.
    #[arg(long, value_enum, default_value = "debug")]
    verify_locality: Verify,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = RunOptions {
        max_elements: args.max_elements,
        verify_locality: match args.verify_locality {
            Verify::Off => LocalityCheck::Off,
            Verify::Debug => LocalityCheck::Debug,
            Verify::Always => LocalityCheck::Always,
        },
        canonical: args.canonical,
    };
    let base = args.job.parent().map(PathBuf::from).unwrap_or_default();
    let outcome = load_job(&args.job).and_then(|job| run(&job, &base, &opts));
    match outcome {
        Ok(report) => {
            match args.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let RunError::LawViolation(report) = &e {
                for v in &report.violations {
                    eprintln!("  {} violated at ({})", v.law, v.witness.join(", "));
                }
                println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
