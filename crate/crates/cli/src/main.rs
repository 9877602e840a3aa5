use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use zfuse_cli::{run, Format, Mode, RunConfig};

/// Fuse Z-number assessments from several sources into a ranked decision.
#[derive(Debug, Parser)]
#[command(name = "zfuse", version)]
struct Args {
    #[arg(value_enum)]
    mode: Mode,

    /// Assessment document (.json, or .csv for flat matrices)
    #[arg(long, short)]
    input: Option<PathBuf>,

    /// Orness level for every weight solve [default: 0.7]
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Decimal places in table output
    #[arg(long, default_value_t = 4)]
    precision: usize,

    /// Number of weights for the `weights` mode
    #[arg(long, default_value_t = 3)]
    n: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = RunConfig {
        mode: args.mode,
        input: args.input,
        alpha: args.alpha,
        format: args.format,
        precision: args.precision,
        n: args.n,
    };
    match run(&config) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("zfuse: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
