use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use p2walls::error::{CliError, CliResult, EXIT_OK};
use p2walls::parse::parse_rational;
use p2walls::sweep::{sweep_lines, SweepSpec};
use p2walls::Format;

/// Exact walls, extremal triples and ample cones for sheaves on P².
///
/// Characters are given as `r,c1,ch2` or `r:mu:disc`.
#[derive(Parser)]
#[command(name = "p2walls", version)]
struct Cli {
    /// JSON output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Plain `key: value` output (the default).
    #[arg(long, global = true)]
    text: bool,
    /// Decimal places for display-only approximations.
    #[arg(long, global = true, default_value_t = 4)]
    decimals: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability class of a character.
    Classify {
        #[arg(allow_hyphen_values = true)]
        character: String,
    },
    /// The curve δ(μ); with --rank also Δ′ and Δ₁.
    Delta {
        #[arg(allow_hyphen_values = true)]
        slope: String,
        #[arg(long)]
        rank: Option<u64>,
    },
    /// The extremal triple of a character.
    Extremal {
        #[arg(allow_hyphen_values = true)]
        character: String,
    },
    /// The Gieseker wall, optionally drawn as SVG.
    Wall {
        #[arg(allow_hyphen_values = true)]
        character: String,
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
        /// Potential walls drawn inside the Gieseker wall.
        #[arg(long, default_value_t = 3)]
        nested: usize,
    },
    /// Search for potential walls larger than the Gieseker wall.
    Exclude {
        #[arg(allow_hyphen_values = true)]
        character: String,
        /// Candidate budget; defaults to P2WALLS_SEARCH_BUDGET or 1000000.
        #[arg(long)]
        max_candidates: Option<usize>,
    },
    /// The ample cone report.
    Ample {
        #[arg(allow_hyphen_values = true)]
        character: String,
    },
    /// Reference tables.
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// NDJSON ample reports over a range of characters.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum TablesAction {
    /// Recompute a table and diff it against the embedded golden rows.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    min_rank: i64,
    #[arg(long)]
    max_rank: i64,
    /// Restrict to these slopes (repeatable); default all of (0, 1].
    #[arg(long = "slope", allow_hyphen_values = true)]
    slopes: Vec<String>,
    /// Lattice points per slope, from the first positive-height one.
    #[arg(long, default_value_t = 1)]
    steps: usize,
}

fn run(cli: Cli) -> CliResult<String> {
    let format = if cli.json { Format::Json } else { Format::Text };
    let decimals = cli.decimals;
    match cli.command {
        Command::Classify { character } => p2walls::classify_cmd(&character, format),
        Command::Delta { slope, rank } => p2walls::delta_cmd(&slope, rank, format, decimals),
        Command::Extremal { character } => p2walls::extremal_cmd(&character, format),
        Command::Wall { character, svg, nested } => {
            let (out, drawing) = p2walls::wall_cmd(&character, format, decimals, nested)?;
            if let Some(path) = svg {
                std::fs::write(path, drawing)?;
            }
            Ok(out)
        }
        Command::Exclude { character, max_candidates } => {
            p2walls::exclude_cmd(&character, max_candidates, format, decimals)
        }
        Command::Ample { character } => p2walls::ample_cmd(&character, format, decimals),
        Command::Tables {
            action: TablesAction::Verify { table },
        } => {
            let report = p2walls::tables::verify_table(table)?;
            print!("{}", report.render());
            if report.passed() {
                Ok(String::new())
            } else {
                Err(CliError::TableMismatch {
                    mismatched: report.mismatches(),
                })
            }
        }
        Command::Sweep(args) => {
            let slopes = if args.slopes.is_empty() {
                None
            } else {
                Some(args.slopes.iter().map(|s| parse_rational(s)).collect::<CliResult<Vec<_>>>()?)
            };
            let spec = SweepSpec {
                min_rank: args.min_rank,
                max_rank: args.max_rank,
                slopes,
                steps: args.steps,
            };
            let mut out = String::new();
            for line in sweep_lines(&spec, decimals)? {
                out.push_str(&line);
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(EXIT_OK as u8)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
