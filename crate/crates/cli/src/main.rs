//! Command-line front end: every subcommand prints JSON on stdout and
//! diagnostics on stderr. Exit status 0 is success, 1 a domain error or a
//! failed check, 2 malformed input or usage.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use propcalc::coproduct::{Strategy, WitnessBounds};
use serde_json::Value;

use commands::{FiltrationArgs, Mode};
use input::{parse_arities, CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "propcalc", version, about = "Exact computation in free props")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the conditions on a graph document.
    Validate { file: PathBuf },
    /// Compose two graphs horizontally or vertically.
    Compose {
        #[arg(value_enum)]
        mode: Mode,
        first: PathBuf,
        second: PathBuf,
        /// Print the canonical form of the composite.
        #[arg(long)]
        canonical: bool,
    },
    /// Canonical vertex order and canonical form of a graph.
    Canon { file: PathBuf },
    /// Whether two graphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Enumerate graphs with given vertex arities, one JSON document per line.
    Enum {
        /// Vertex shapes as `in:out` pairs, e.g. `1:1,2:1`.
        #[arg(long, value_parser = parse_arities, default_value = "")]
        arities: std::vec::Vec<(usize, usize)>,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        upto_iso: bool,
    },
    /// Numbered and isomorphism-class counts of free prop basis elements.
    Count {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_r: usize,
    },
    /// Flatten a graph of graphs.
    Expand { file: PathBuf },
    /// Apply the free prop morphism extending a generator assignment.
    Map {
        file: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
    },
    /// Evaluate an element in a prop algebra.
    Eval {
        file: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Check that a linear map intertwines two algebra structures.
    CheckMorphism {
        #[arg(long)]
        f: PathBuf,
        #[arg(long = "phiA")]
        phi_a: PathBuf,
        #[arg(long = "phiB")]
        phi_b: PathBuf,
        /// Generator shapes; inferred from the matrices when absent.
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Merge P vertices of a mixed graph until none can be merged.
    Collapse {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
    },
    /// Search for a mixed graph with two different collapses.
    Witness {
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Punctured-cube colimit of a map K → L.
    Cube {
        /// Comma-separated elements of K.
        #[arg(long = "K", allow_hyphen_values = true)]
        k: String,
        /// Comma-separated elements of L.
        #[arg(long = "L")]
        l: String,
        #[arg(long)]
        n: usize,
        /// The map as `k=l` pairs; K ⊆ L by name when absent.
        #[arg(long)]
        map: Option<String>,
    },
    /// Verify the pushout squares filtering a cell attachment.
    FiltrationCheck {
        #[arg(long = "sigK")]
        sig_k: PathBuf,
        #[arg(long = "sigL")]
        sig_l: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Run quick checks on the embedded fixtures.
    Selftest,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum StrategyArg {
    Greedy,
    Exhaustive,
}

enum Output {
    Json(Value),
    Lines(String),
}

fn run(command: Command) -> CliResult<Output> {
    use Output::Json;
    Ok(match command {
        Command::Validate { file } => Json(commands::validate(&file)?),
        Command::Compose { mode, first, second, canonical } => {
            Json(commands::compose(mode, &first, &second, canonical)?)
        }
        Command::Canon { file } => Json(commands::canon(&file)?),
        Command::Iso { first, second } => Json(commands::iso(&first, &second)?),
        Command::Enum { arities, m, n, upto_iso } => Output::Lines(commands::enumerate(&arities, m, n, upto_iso)?),
        Command::Count { sig, m, n, max_r } => Json(commands::count(&sig, m, n, max_r)?),
        Command::Expand { file } => Json(commands::expand_nested(&file)?),
        Command::Map { file, assignment } => Json(commands::map(&file, &assignment)?),
        Command::Eval { file, algebra } => Json(commands::eval(&file, &algebra)?),
        Command::CheckMorphism { f, phi_a, phi_b, sig } => {
            Json(commands::check_morphism(&f, &phi_a, &phi_b, sig.as_deref())?)
        }
        Command::Collapse { file, strategy } => {
            let strategy = match strategy {
                StrategyArg::Greedy => Strategy::Greedy,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
            };
            Json(commands::collapse_mixed(&file, strategy)?)
        }
        Command::Witness { max_vertices, max_degree } => {
            Json(commands::witness(WitnessBounds { max_vertices, max_p_vertices: max_vertices, max_degree })?)
        }
        Command::Cube { k, l, n, map } => Json(commands::cube(&k, &l, n, map.as_deref())?),
        Command::FiltrationCheck { sig_k, sig_l, base, max_degree, max_vertices, m, n } => {
            Json(commands::filtration_check(FiltrationArgs {
                sig_k: &sig_k,
                sig_l: &sig_l,
                base: &base,
                max_degree,
                max_vertices,
                m,
                n,
            })?)
        }
        Command::Selftest => Json(commands::selftest()?),
    })
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n"
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli.command) {
        Ok(Output::Json(value)) => {
            let _ = stdout.write_all(pretty(&value).as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Output::Lines(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(report)) => {
            let value: Value = serde_json::from_str(&report).unwrap_or(Value::String(report));
            let _ = stdout.write_all(pretty(&value).as_bytes());
            eprintln!("propcalc: check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("propcalc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
