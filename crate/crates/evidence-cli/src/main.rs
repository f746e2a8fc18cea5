//! `evidence` — likelihood-based evidence analysis for finite discrete models.
//!
//! Every subcommand builds a model (from a `.lmod` file or a builtin), runs
//! one analysis from `evidence-core`, and prints a deterministic report as
//! text, CSV, or JSON. Exit codes: 0 success, 2 usage error, 3 validation or
//! parse error, 4 domain refusal (for example an undefined 0/0 ratio or a
//! cross-model comparison).

mod cli;
mod commands;
mod exit;
mod report;
mod source;

use clap::Parser;

fn main() {
    let args = match cli::Cli::try_parse() {
        Ok(args) => args,
        Err(err) => match err.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                print!("{err}");
                std::process::exit(0);
            }
            _ => {
                eprintln!("error[usage]: {}", usage_line(&err));
                std::process::exit(exit::EXIT_USAGE);
            }
        },
    };
    if let Err(err) = configure_threads() {
        eprintln!("{}", err.render_line());
        std::process::exit(err.exit_code());
    }
    match commands::run(args) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("{}", err.render_line());
            std::process::exit(err.exit_code());
        }
    }
}

/// Collapses a clap error to one line so stderr diagnostics stay
/// machine-readable; the full usage text lives in `--help`.
fn usage_line(err: &clap::Error) -> String {
    let text = err.to_string();
    let body: Vec<&str> = text
        .lines()
        .take_while(|line| !line.trim_start().starts_with("Usage:"))
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .collect();
    let joined = body.join(" ");
    joined.strip_prefix("error: ").unwrap_or(&joined).to_owned()
}

/// Applies the `LIKELIHOOD_EVIDENCE_THREADS` cap before any parallel work
/// starts; unset means all cores.
fn configure_threads() -> Result<(), exit::CliError> {
    let Some(raw) = std::env::var_os("LIKELIHOOD_EVIDENCE_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let threads: usize = match text.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => {
            return Err(exit::CliError::Usage(format!(
                "LIKELIHOOD_EVIDENCE_THREADS must be a positive integer, got {text:?}"
            )))
        }
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| {
            exit::CliError::Usage(format!("could not configure {threads} worker threads: {e}"))
        })
}
