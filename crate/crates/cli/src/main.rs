//! Command-line front end: scans over congruence levels and synthetic
//! families, verdicts, and witness fits, emitted as CSV or JSON reports.
//!
//! Every report embeds the resolved configuration and the tool version, and
//! identical configuration plus seed produces byte-identical output.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

#[derive(Parser)]
#[command(
    name = "orbilab",
    version,
    about = "Scans, verdicts, and reports for hyperbolic orbifold diagnostics",
    propagate_version = true
)]
struct Cli {
    /// Defaults file with `key = value` lines; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: commands::Command,
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE, so printing into a closed pipe (e.g. `| head`)
    // would panic; restore the default die-quietly behavior.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let file = match config::FileConfig::load(cli.config.as_deref()) {
        Ok(file) => file,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    match commands::run(cli.command, &file) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
