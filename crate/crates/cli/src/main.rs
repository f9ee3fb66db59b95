//! `spacelike`: command-line front end for spacelike-core.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain or regime error,
//! 3 numerical blow-up.

mod commands;
mod evolve;
mod failure;
mod output;
mod presets;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::Report;
use failure::Failure;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "spacelike", version, about = "Kinematics, plane waves and lattice evolution for spacelike spin-1/2 particles")]
#[command(args_conflicts_with_subcommands = true, arg_required_else_help = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "SPACELIKE_FORMAT", default_value = "json")]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Seed for any random initial data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run a named reproduction scenario.
    #[arg(long, value_enum)]
    preset: Option<presets::Preset>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the anticommutator algebra of the matrix basis.
    VerifyAlgebra(commands::AlgebraArgs),
    /// Energy and speed on the spacelike shell.
    Dispersion(commands::DispersionArgs),
    /// Momentum and energy limits at infinite speed.
    Limits(commands::LimitsArgs),
    /// Closed-form plane-wave bispinors and physical selection.
    Bispinor(commands::BispinorArgs),
    /// Transform events or a four-momentum by GGT or a Lorentz boost.
    Boost(commands::BoostArgs),
    /// Evolve a field on a periodic 1D lattice.
    Evolve(evolve::EvolveArgs),
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(Report, bool), Failure> {
    // evolve in CSV mode streams its rows itself
    let streamed = matches!(cli.command, Some(Command::Evolve(_))) && cli.format == Format::Csv;
    let report = match (&cli.preset, &cli.command) {
        (Some(p), _) => presets::run(*p)?,
        (None, Some(Command::VerifyAlgebra(a))) => commands::verify(a)?,
        (None, Some(Command::Dispersion(a))) => commands::dispersion(a)?,
        (None, Some(Command::Limits(a))) => commands::limits(a)?,
        (None, Some(Command::Bispinor(a))) => commands::bispinor(a)?,
        (None, Some(Command::Boost(a))) => commands::boost(a)?,
        (None, Some(Command::Evolve(a))) => evolve::evolve(a, cli.seed, cli.format, out)?,
        (None, None) => return Err(Failure::domain("no subcommand or preset given")),
    };
    Ok((report, streamed))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut out = match open_output(&cli.output) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: cannot open output: {e}");
            return ExitCode::from(2);
        }
    };
    let code = match dispatch(&cli, &mut out) {
        Ok((report, streamed)) => {
            if !streamed {
                if let Err(e) = output::render(&report.value, cli.format, &mut out) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code)
        }
        Err(failure) => {
            eprintln!("error ({}): {}", failure.kind, failure.message);
            if cli.format != Format::Csv || !matches!(cli.command, Some(Command::Evolve(_))) {
                let _ = output::render(&json!({ "error": failure }), cli.format, &mut out);
            }
            failure.exit()
        }
    };
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    code
}
