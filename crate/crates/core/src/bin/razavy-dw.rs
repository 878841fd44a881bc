use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use razavy_dw::format::Precision;
use razavy_dw::potential::PotentialParams;
use razavy_dw::scenario::{
    eigen_table, format_eigen_table, run_scenario, sweep, sweep_csv, sweep_range, RunOptions, Scenario, ScenarioError,
    SweepParam,
};

#[derive(Parser)]
#[command(name = "razavy-dw", version, about = "Driven coupled Razavy double wells")]
struct Cli {
    /// Write numbers with 17 significant digits.
    #[arg(long, global = true)]
    machine: bool,
    /// Suppress warnings and progress on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its CSV/JSON artifacts.
    Run {
        file: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the single-well and coupled constants.
    Eigen {
        #[arg(long, allow_hyphen_values = true)]
        g: f64,
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
    },
    /// Averaged observables across a parameter range, as CSV on stdout.
    Sweep {
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "values")]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "values")]
        to: Option<f64>,
        #[arg(long, required_unless_present = "values")]
        steps: Option<usize>,
        /// Explicit comma-separated values instead of a range.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["from", "to", "steps"])]
        values: Option<Vec<f64>>,
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = if cli.machine { Precision::Machine } else { Precision::Human };
    match dispatch(cli.command, precision, cli.quiet) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("razavy-dw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command, precision: Precision, quiet: bool) -> Result<(), ScenarioError> {
    match command {
        Command::Run { file, out } => {
            let (result, files) = run_scenario(&file, &out, RunOptions { precision })?;
            if !quiet {
                for w in &result.warnings {
                    eprintln!("warning: {w}");
                }
                for f in &files {
                    eprintln!("wrote {}", f.display());
                }
            }
            Ok(())
        }
        Command::Eigen { g, xi } => {
            let params = PotentialParams { xi, ..PotentialParams::default() };
            print!("{}", format_eigen_table(&eigen_table(params, g)?));
            Ok(())
        }
        Command::Sweep { param, from, to, steps, values, file } => {
            let param: SweepParam = param.parse()?;
            let values = match values {
                Some(v) => v,
                None => sweep_range(from.unwrap_or_default(), to.unwrap_or_default(), steps.unwrap_or_default())?,
            };
            let base = Scenario::load(&file)?;
            let rows = sweep(&base, param, &values)?;
            print!("{}", sweep_csv(&base, param, &rows, precision));
            let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
            if failed > 0 {
                return Err(ScenarioError::Numeric(format!("{failed} of {} sweep points failed", rows.len())));
            }
            Ok(())
        }
    }
}
