//! `exfgm`: admissible ranges, validity checks, dependence measures, sampling and
//! counterexample reproduction for the extended FGM copula.
//!
//! Exit codes: 0 success, 2 invalid input, 3 not admissible / check failed,
//! 4 I/O failure, 5 falsification not confirmed.

mod commands;
mod output;

use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

use output::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "exfgm", version, about = "Extended FGM copula toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissible range of `a` for a given `b`.
    Range {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Show the published min-form range -1 <= a <= min{1/(1-b), 2} (not valid).
        #[arg(long, conflicts_with = "ebaid_online")]
        ebaid_min: bool,
        /// Show the published online-form range -1 <= a <= 1/(1-b) (not valid).
        #[arg(long)]
        ebaid_online: bool,
    },
    /// Exit 0 if (a, b) defines a copula, 3 otherwise.
    Validate {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
    },
    /// Spearman's rho and Kendall's tau.
    Measures {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Also integrate both measures by Gauss-Legendre quadrature.
        #[arg(long)]
        numeric: bool,
        /// Quadrature nodes per axis.
        #[arg(long, default_value_t = exfgm::oracle::DEFAULT_NODES)]
        nodes: usize,
    },
    /// Brute-force grid checks: margins, density sign, cell volumes.
    Check {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = exfgm::oracle::DEFAULT_GRID)]
        grid: usize,
    },
    /// Draw pairs by conditional inversion.
    Sample {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(short = 'n', long = "count")]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV destination; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep b over [0, 2] and tabulate the admissible range and measure extremes.
    Region {
        #[arg(long, default_value_t = 201)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the counterexamples against the published ranges.
    Falsify,
}

fn main() {
    let cli = Cli::parse();
    let fmt = cli.format;
    let result = match cli.command {
        Command::Range {
            b,
            ebaid_min,
            ebaid_online,
        } => commands::range(fmt, b, ebaid_min, ebaid_online),
        Command::Validate { a, b } => commands::validate(fmt, a, b),
        Command::Measures {
            a,
            b,
            numeric,
            nodes,
        } => commands::measures(fmt, a, b, numeric.then_some(nodes)),
        Command::Check { a, b, grid } => commands::check(fmt, a, b, grid),
        Command::Sample {
            a,
            b,
            count,
            seed,
            out,
        } => commands::sample(fmt, a, b, count, seed, out.as_deref()),
        Command::Region { steps, out } => commands::region(fmt, steps, out.as_deref()),
        Command::Falsify => commands::falsify(fmt),
    };
    let code = match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.code
        }
    };
    process::exit(code as i32);
}
