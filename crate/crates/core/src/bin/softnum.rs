use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use softnum::check::{self, CheckConfig};
use softnum::cli::{self, CliConfig, CommandError, Resolution, EXIT_CHECK_FAILED, EXIT_USAGE};
use softnum::export::MeshFormat;
use softnum::geometry::Surface;

#[derive(Parser)]
#[command(name = "softnum", version, about = "Soft-number calculator, soft probabilities and Möbius-strip meshes")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a soft-number expression, e.g. "(2z0 + 3) * (4z0 + 5)"
    Eval { expr: String },
    /// Soft probability of a query, e.g. prob "normal(0,1)" "<= 0.5"
    Prob { dist: String, query: String },
    /// Run the geometry self-checks
    Check {
        #[arg(long, default_value_t = check::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb: f64,
        #[arg(long = "R", default_value_t = check::DEFAULT_RADIUS)]
        radius: f64,
    },
    /// Write a strip, plane or Möbius mesh plus a JSON manifest
    Mesh {
        #[arg(long, default_value = "mobius")]
        surface: Surface,
        #[arg(long = "R", default_value_t = 10.0)]
        radius: f64,
        #[arg(long, default_value = "1000x1000")]
        res: Resolution,
        #[arg(long, default_value = "csv")]
        format: MeshFormat,
        /// Defaults to mesh.<format>
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fail(e: CommandError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match args.command {
        Command::Eval { expr } => match cli::eval(&expr) {
            Ok(s) => println!("{s}"),
            Err(e) => return fail(e),
        },
        Command::Prob { dist, query } => match cli::prob(&dist, &query) {
            Ok(s) => println!("{s}"),
            Err(e) => return fail(e),
        },
        Command::Check { seed, perturb, radius } => {
            let tolerance = match cli::tolerance_from_env() {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let cfg = CheckConfig {
                seed,
                radius,
                perturb,
                tolerance,
            };
            if !(radius.is_finite() && radius > 1.0) {
                return fail(softnum::geometry::GeometryError::InvalidRadius(radius).into());
            }
            let report = check::run_checks(&cfg);
            println!("{report}");
            if !report.passed() {
                return ExitCode::from(EXIT_CHECK_FAILED);
            }
        }
        Command::Mesh {
            surface,
            radius,
            res,
            format,
            out,
        } => {
            let config = CliConfig {
                radius,
                resolution: res,
                surface,
                format,
                out: out.unwrap_or_else(|| PathBuf::from(format!("mesh.{}", format.extension()))),
            };
            match cli::mesh(&config) {
                Ok(m) => println!(
                    "wrote {} ({} vertices, sha256 {})",
                    config.out.display(),
                    m.vertex_count,
                    m.checksum
                ),
                Err(e) => return fail(e),
            }
        }
    }
    ExitCode::SUCCESS
}
