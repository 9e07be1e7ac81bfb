//! Command-line front end.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed, 2 the
//! input could not be read or parsed.

mod commands;
mod input;
mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use commands::Mode;
use report::Format;

#[derive(Parser)]
#[command(
    name = "submonoidal",
    version,
    about = "Exact analysis of surfaces ruled in conics over a line"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the binary forms of a surface, classify its singular fibers,
    /// and compute its distinguished loci.
    Analyze { input: PathBuf },
    /// Compute the satellite curve and the two space involutions, and verify
    /// their defining properties.
    Involutions {
        input: PathBuf,
        /// Verify the reflection involution symbolically or at sampled points.
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Perturb the surface equation so the invariance check fails
        /// (for exercising the failure path).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Blow-up lattice bookkeeping for a surface of the given degree.
    Lattice { d: u32 },
    /// Analyze a higher-dimensional input: fiber matrix, satellite
    /// parameterization, and sampled involution checks.
    Hypersurface { input: PathBuf },
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let built = match &cli.command {
        Command::Analyze { input } => {
            read_input(input).and_then(|t| commands::cmd_analyze(&t).map_err(|e| e.to_string()))
        }
        Command::Involutions {
            input,
            mode,
            corrupt,
        } => read_input(input).and_then(|t| {
            commands::cmd_involutions(&t, *mode, cli.seed, *corrupt).map_err(|e| e.to_string())
        }),
        Command::Lattice { d } => commands::cmd_lattice(*d).map_err(|e| e.to_string()),
        Command::Hypersurface { input } => read_input(input)
            .and_then(|t| commands::cmd_hypersurface(&t, cli.seed).map_err(|e| e.to_string())),
    };
    let report = match built {
        Ok(r) => r,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let rendered = report.render(cli.format);
    print!("{rendered}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
