//! Command-line front end: runs JSON-described scenarios and writes CSV or
//! JSON result files.
//!
//! Exit codes: 0 success, 2 configuration error, 3 strict-mode regime
//! violation, 4 numerical or I/O failure. `TCDYN_THREADS` caps the rayon
//! worker pool.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tcdyn::scenario::{load_config, run_scenario, Engine, OutputFormat, RunOptions};
use tcdyn::TcdynError;

#[derive(Parser)]
#[command(name = "tcdyn", version, about = "Qubit-oscillator dynamics beyond the rotating-wave approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario described by a JSON config file.
    Run {
        /// Path to the scenario config (JSON).
        config: PathBuf,
        /// Directory the result files are written into.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Refuse to run engines outside their regime of validity.
        #[arg(long)]
        strict: bool,
        /// Engine override: comma-separated subset of
        /// exact,adiabatic,analytic,rwa.
        #[arg(long, value_delimiter = ',')]
        engines: Option<Vec<String>>,
        /// Tabular output format.
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

fn parse_engine(name: &str) -> Result<Engine, TcdynError> {
    match name.trim() {
        "exact" => Ok(Engine::Exact),
        "adiabatic" => Ok(Engine::Adiabatic),
        "analytic" => Ok(Engine::Analytic),
        "rwa" => Ok(Engine::Rwa),
        other => Err(TcdynError::Config(format!("unknown engine '{other}'"))),
    }
}

fn parse_format(name: &str) -> Result<OutputFormat, TcdynError> {
    match name {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(TcdynError::Config(format!("unknown format '{other}'"))),
    }
}

fn run(cli: Cli) -> Result<(), TcdynError> {
    if let Ok(threads) = std::env::var("TCDYN_THREADS") {
        let n: usize = threads
            .parse()
            .map_err(|_| TcdynError::Config("TCDYN_THREADS must be a positive integer".into()))?;
        // Ignored when a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Run { config, out, strict, engines, format } => {
            let cfg = load_config(&config)?;
            let engines = engines
                .map(|names| names.iter().map(|n| parse_engine(n)).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            let opts = RunOptions {
                out_dir: out,
                format: parse_format(&format)?,
                strict,
                engines,
            };
            let written = run_scenario(&cfg, &opts)?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

fn exit_code(err: &TcdynError) -> u8 {
    match err {
        TcdynError::Config(_) | TcdynError::InvalidParams(_) | TcdynError::Json(_) => 2,
        TcdynError::Strict(_) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
