use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use psdual::GridSpec;
use psdual_cli::commands::{Command, Format, RunConfig, DEFAULT_MAX_ROWS, EXIT_INVALID};
use psdual_cli::run;

#[derive(Parser)]
#[command(name = "psdual", version, about = "Ground states dual to spherically symmetric charge densities")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Field, potentials, energy and wavefunction of the dual ground state.
    Solve(CommonArgs),
    /// Cross-check the analytic ground state numerically.
    Verify(CommonArgs),
    /// Sample r, rho, E_field, V, U and psi on the grid.
    Table {
        #[command(flatten)]
        common: CommonArgs,
        /// Keep at most this many rows.
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: usize,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Density, e.g. "2/r + 0.3" or a JSON list of {"c", "k"} records.
    #[arg(long)]
    density: String,
    #[arg(long, default_value_t = 1e-6)]
    rmin: f64,
    #[arg(long, default_value_t = 40.0)]
    rmax: f64,
    /// Number of grid intervals.
    #[arg(long, default_value_t = 40_000)]
    n: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Exit with status 3 when the state is not bound.
    #[arg(long)]
    strict_bound: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, max_rows) = match cli.command {
        Sub::Solve(c) => (Command::Solve, c, DEFAULT_MAX_ROWS),
        Sub::Verify(c) => (Command::Verify, c, DEFAULT_MAX_ROWS),
        Sub::Table { common, max_rows } => (Command::Table, common, max_rows),
    };

    let grid = match GridSpec::new(common.rmin, common.rmax, common.n) {
        Ok(grid) => grid,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({"error": e.reason_code(), "message": e.to_string()})
            );
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let cfg = RunConfig {
        command,
        grid,
        format: common.format,
        strict_bound: common.strict_bound,
        max_rows,
    };

    let outcome = run(&cfg, &common.density);
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
