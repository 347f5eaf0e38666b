use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use morava_cli::{
    cmd_check, cmd_group, cmd_rw, cmd_sweep, emit, load_group_table, parse_range, parse_set,
    rank_budget, CliError, ErrorCode, Format, GroupSpec, PipelineConfig,
};

/// Exact invariants of K(n)-locally dualizable groups: Frobenius structure,
/// primitives, K(n)-degree, bordism values and bar-complex Tor.
#[derive(Parser)]
#[command(name = "morava", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build K(n)_* K(Z/p, q) and report its invariants.
    Rw {
        #[arg(long = "p")]
        p: u32,
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "q")]
        q: u32,
        #[arg(long = "smax", default_value_t = 2)]
        smax: u32,
        #[arg(long = "tor-budget", default_value_t = morava::DEFAULT_TOR_BUDGET)]
        tor_budget: u128,
        #[arg(long = "format", default_value = "json")]
        format: String,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        /// Skip the O(rank^3) construction checks and Tor.
        #[arg(long = "fast")]
        fast: bool,
    },
    /// Build a finite group algebra and report its invariants.
    Group {
        #[arg(long = "p")]
        p: u32,
        #[arg(long = "n", default_value_t = 1)]
        n: u32,
        /// Cyclic group of this order.
        #[arg(long = "group-cyclic")]
        group_cyclic: Option<u32>,
        /// JSON file with a multiplication table.
        #[arg(long = "group-table")]
        group_table: Option<PathBuf>,
        #[arg(long = "smax", default_value_t = 2)]
        smax: u32,
        #[arg(long = "tor-budget", default_value_t = morava::DEFAULT_TOR_BUDGET)]
        tor_budget: u128,
        #[arg(long = "format", default_value = "json")]
        format: String,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "fast")]
        fast: bool,
    },
    /// Run the pipeline over a (p, n, q) grid, one row per instance.
    Sweep {
        /// Comma-separated primes, e.g. 2,3,5.
        #[arg(long = "p-set")]
        p_set: String,
        /// Inclusive range a..b (or a single value).
        #[arg(long = "n-range")]
        n_range: String,
        /// Inclusive range a..b; defaults to 1..n per instance.
        #[arg(long = "q-range")]
        q_range: Option<String>,
        #[arg(long = "smax", default_value_t = 2)]
        smax: u32,
        #[arg(long = "tor-budget", default_value_t = morava::DEFAULT_TOR_BUDGET)]
        tor_budget: u128,
        #[arg(long = "format", default_value = "json")]
        format: String,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "fast")]
        fast: bool,
    },
    /// Run the full invariant and property suite over the default grid.
    Check {
        #[arg(long = "smax", default_value_t = 2)]
        smax: u32,
        #[arg(long = "tor-budget", default_value_t = morava::DEFAULT_TOR_BUDGET)]
        tor_budget: u128,
        #[arg(long = "fast")]
        fast: bool,
    },
}

fn write_output(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(CliError::from)?;
            Ok(())
        }
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Rw {
            p,
            n,
            q,
            smax,
            tor_budget,
            format,
            out,
            fast,
        } => {
            let format: Format = format.parse()?;
            let cfg = PipelineConfig {
                s_max: smax,
                tor_budget,
                rank_budget: rank_budget()?,
                fast,
            };
            let doc = cmd_rw(p, n, q, &cfg)?;
            write_output(&emit::emit_report(&doc, format), &out)
        }
        Command::Group {
            p,
            n,
            group_cyclic,
            group_table,
            smax,
            tor_budget,
            format,
            out,
            fast,
        } => {
            let format: Format = format.parse()?;
            let spec = match (group_cyclic, group_table) {
                (Some(m), None) => GroupSpec::Cyclic(m),
                (None, Some(path)) => GroupSpec::Table(load_group_table(&path)?),
                _ => {
                    return Err(CliError::new(
                        ErrorCode::InvalidRange,
                        "exactly one of --group-cyclic and --group-table is required",
                    ))
                }
            };
            let cfg = PipelineConfig {
                s_max: smax,
                tor_budget,
                rank_budget: rank_budget()?,
                fast,
            };
            let doc = cmd_group(p, n, &spec, &cfg)?;
            write_output(&emit::emit_report(&doc, format), &out)
        }
        Command::Sweep {
            p_set,
            n_range,
            q_range,
            smax,
            tor_budget,
            format,
            out,
            fast,
        } => {
            let format: Format = format.parse()?;
            let p_set = parse_set(&p_set)?;
            let n_range = parse_range(&n_range)?;
            let q_range = match q_range {
                Some(s) => Some(parse_range(&s)?),
                None => None,
            };
            let cfg = PipelineConfig {
                s_max: smax,
                tor_budget,
                rank_budget: rank_budget()?,
                fast,
            };
            let doc = cmd_sweep(&p_set, &n_range, q_range.as_deref(), &cfg)?;
            write_output(&emit::emit_sweep(&doc, format), &out)
        }
        Command::Check {
            smax,
            tor_budget,
            fast,
        } => {
            let cfg = PipelineConfig {
                s_max: smax,
                tor_budget,
                rank_budget: rank_budget()?,
                fast,
            };
            let outcome = cmd_check(&cfg);
            print!("{}", outcome.render());
            if outcome.passed() {
                Ok(())
            } else {
                Err(CliError::new(ErrorCode::CheckFailed, "check suite failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code.exit_code() as u8)
        }
    }
}
