//! `corrpoly`: polytope reports, strata dumps and type censuses from the
//! command line.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 internal
//! invariant violation (including a `--verify` mismatch), 4 unsupported
//! shape or size cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corrpoly::classify::{
    census_shape_allowed, conjecture_probe_2xn, enumerate_sign_patterns_2x3, sample_census, CensusTable,
    DEFAULT_BUDGET,
};
use corrpoly::equilibria::{correlated_polytope, verify_vertices};
use corrpoly::strata::{analyze_strata, StrataLimits};
use corrpoly::{Error, Game, GameShape};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "corrpoly", version, about = "Correlated equilibrium polytopes of normal-form games")]
struct Cli {
    /// Worker threads for censuses (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices, facets, f-vector, type key and Nash vertices of a game.
    Polytope {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check vertices against the brute-force enumeration.
        #[arg(long)]
        verify: bool,
    },
    /// Maximal-minor counts and, for (2 x n) shapes, the strata components.
    Strata {
        #[arg(long)]
        shape: GameShape,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Raise the size caps.
        #[arg(long)]
        allow_large: bool,
    },
    /// Combinatorial types over all (2 x 3) sign patterns.
    Classify {
        #[arg(long, default_value = "2x3")]
        shape: GameShape,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[command(flatten)]
        output: CensusOutput,
    },
    /// Combinatorial types of random integer games.
    Sample {
        #[arg(long)]
        shape: GameShape,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Inclusive payoff range `LO,HI`.
        #[arg(long, default_value = "-100,100", value_parser = parse_range, allow_hyphen_values = true)]
        range: (i64, i64),
        /// Permit shapes outside (2 x n), n <= 5, and (2 x 2 x 2).
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        output: CensusOutput,
    },
    /// Compares lower-dimensional (2 x n) types with maximal (2 x k) types.
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CensusOutput {
    /// Output file; with `--format csv` a JSON sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo},{hi}"));
    }
    Ok((lo, hi))
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidShape(_) | Error::LimitExceeded(_) => 4,
            Error::Invariant(_) | Error::Factorization(_) | Error::EmptyPolytope => 3,
            Error::MalformedGame(_)
            | Error::InvalidRational(_)
            | Error::ShapeMismatch(_)
            | Error::InvalidArgument(_)
            | Error::OutsideSpace
            | Error::Json(_) => 2,
        };
        Self::new(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn write_text(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn load_game(path: &Path) -> Result<Game, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    Game::from_json(&text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn cmd_polytope(input: &Path, out: Option<&Path>, verify: bool) -> Outcome {
    let game = load_game(input)?;
    if verify {
        verify_vertices(&game)?;
    }
    let report = correlated_polytope(&game)?;
    write_text(out, &pretty(&report.to_json()))
}

fn cmd_strata(shape: &GameShape, out: Option<&Path>, allow_large: bool) -> Outcome {
    let limits = if allow_large {
        StrataLimits {
            max_joint: 12,
            max_n: 6,
        }
    } else {
        StrataLimits::default()
    };
    let summary = analyze_strata(shape, &limits)?;
    write_text(out, &pretty(&summary.to_json()))
}

fn write_census(table: &CensusTable, output: &CensusOutput) -> Outcome {
    let json = pretty(&table.to_json());
    match output.format {
        Format::Json => write_text(output.out.as_deref(), &json),
        Format::Csv => {
            write_text(output.out.as_deref(), &table.to_csv())?;
            match &output.out {
                Some(p) => write_text(Some(&sidecar(p)), &json),
                None => Ok(()),
            }
        }
    }
}

/// `types.csv` -> `types.json`; a path already ending in `.json` gets
/// `.json` appended instead.
fn sidecar(path: &Path) -> PathBuf {
    if path.extension().is_some_and(|e| e == "json") {
        let mut s = path.as_os_str().to_owned();
        s.push(".json");
        PathBuf::from(s)
    } else {
        path.with_extension("json")
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| Failure::new(1, e.to_string()))?;
    }
    match cli.command {
        Command::Polytope { input, out, verify } => cmd_polytope(&input, out.as_deref(), verify),
        Command::Strata { shape, out, allow_large } => cmd_strata(&shape, out.as_deref(), allow_large),
        Command::Classify {
            shape,
            seed,
            budget,
            output,
        } => {
            if shape.two_by_n() != Some(3) {
                return Err(Failure::new(4, format!("sign-pattern classification supports 2x3, not {shape}")));
            }
            write_census(&enumerate_sign_patterns_2x3(budget, seed)?, &output)
        }
        Command::Sample {
            shape,
            count,
            seed,
            range,
            allow_large,
            output,
        } => {
            if !allow_large && !census_shape_allowed(&shape) {
                return Err(Failure::new(
                    4,
                    format!("census of {shape} needs --allow-large"),
                ));
            }
            write_census(&sample_census(&shape, count, seed, range)?, &output)
        }
        Command::Probe { n, count, seed, out } => {
            if !(2..=5).contains(&n) {
                return Err(Failure::new(4, format!("probe supports 2 <= n <= 5, got {n}")));
            }
            let report = conjecture_probe_2xn(n, count, seed)?;
            write_text(out.as_deref(), &pretty(&report.to_json()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
