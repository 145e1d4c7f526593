use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zonokit::commands::{self, CliError, Outcome, RunConfig, EXIT_OK, EXIT_USAGE};
use zonokit::parse_matrix;
use zonokit_core::{Matrix, Tolerance};

/// Volumes, congruence witnesses, tilings, exterior roots, meshes and
/// symmetry tests for zonotopes given by their generator matrices.
///
/// Exit codes: 0 ok, 1 negative result, 2 capacity exceeded, 3 rank
/// deficient or singular input, 4 no real exterior root, 5 mesh needs
/// rank 3, 64 parse or usage error, 70 internal verification failure.
#[derive(Parser, Debug)]
#[command(name = "zonokit", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Absolute tolerance.
    #[arg(long, global = true, env = "ZONOKIT_TOL_ABS", default_value_t = 1e-9)]
    tol_abs: f64,
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_rel: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON or OFF result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, volume and independent-subset census.
    Volume {
        input: PathBuf,
        /// Also estimate the volume from this many random samples.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Decide whether Z(A) and Z(B) are congruent; writes the witness.
    Congruent { a: PathBuf, b: PathBuf },
    /// Tile the zonotope by generating parallelotopes and validate it.
    Tile {
        input: PathBuf,
        /// Generator order, 0-based, comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// The matrix whose (n-1)-st compound is the input.
    Root { input: PathBuf },
    /// OFF mesh of a three-dimensional zonotope.
    Mesh { input: PathBuf },
    /// Central symmetry of a point set (one point per row).
    Symmetry {
        input: PathBuf,
        /// Treat the rows as consecutive vertices of a closed loop.
        #[arg(long = "loop")]
        as_loop: bool,
    },
}

fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    if !(g.tol_abs >= 0.0 && g.tol_rel >= 0.0 && g.tol_abs.is_finite() && g.tol_rel.is_finite()) {
        return Err(CliError::Usage("tolerances must be finite and nonnegative".into()));
    }
    let cfg = RunConfig {
        tol: Tolerance {
            abs: g.tol_abs,
            rel: g.tol_rel,
        },
        seed: g.seed,
    };
    match &cli.command {
        Command::Volume { input, samples } => commands::volume(&read_matrix(input)?, *samples, &cfg),
        Command::Congruent { a, b } => commands::congruent(&read_matrix(a)?, &read_matrix(b)?, &cfg),
        Command::Tile { input, order } => commands::tile(&read_matrix(input)?, order.as_deref(), &cfg),
        Command::Root { input } => commands::root(&read_matrix(input)?, &cfg),
        Command::Mesh { input } => commands::mesh(&read_matrix(input)?, &cfg),
        Command::Symmetry { input, as_loop } => commands::symmetry(&read_matrix(input)?, *as_loop, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(outcome) => {
            match (&outcome.payload, out) {
                (Some(body), Some(path)) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE as u8);
                    }
                    print!("{}", outcome.summary);
                }
                (Some(body), None) => {
                    eprint!("{}", outcome.summary);
                    print!("{body}");
                }
                (None, _) => print!("{}", outcome.summary),
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
