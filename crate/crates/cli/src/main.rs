//! `islandperf`: generate instances, run experiment sweeps, aggregate, fit
//! performance models and report significance.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// An error paired with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    /// Bad flags, unreadable inputs, unwritable outputs, invalid configs.
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self { code: 2, error: error.into() }
    }

    pub fn runtime(error: impl Into<anyhow::Error>) -> Self {
        Self { code: 1, error: error.into() }
    }
}

pub type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(name = "islandperf", version, about = "Island-model GA performance toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    #[value(alias = "wct", alias = "wallclock")]
    WallClock,
    #[value(alias = "speed-up", alias = "su")]
    Speedup,
}

#[derive(Subcommand)]
enum Command {
    /// Write a P-PEAKS instance dump.
    Generate {
        #[arg(long, default_value = "ppeaks")]
        problem: String,
        /// Number of peaks.
        #[arg(short = 'P', long = "peaks")]
        peaks: usize,
        /// Bits per string.
        #[arg(short = 'N', long = "bits")]
        bits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Execute an experiment sweep, streaming one CSV row per run.
    Run {
        /// Flat key = value experiment config.
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
        /// Single-threaded replayable schedule.
        #[arg(long)]
        deterministic: bool,
        /// Overrides the config's base seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Median/stdv table from a run-record CSV.
    Aggregate {
        #[arg(short, long)]
        records: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Fit model families to aggregate medians; writes a fit report,
    /// prediction CSVs and SVG plots.
    Analyze {
        #[arg(short, long)]
        aggregate: PathBuf,
        #[arg(long, value_enum, default_value = "wall-clock")]
        kind: Kind,
        /// Comma-separated families (default: all six).
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        /// Output directory.
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Aggregate table plus Kruskal-Wallis significance across gaps and
    /// across worker counts.
    Report {
        #[arg(short, long)]
        records: PathBuf,
        /// Output directory.
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { problem, peaks, bits, seed, out } => commands::generate(&problem, peaks, bits, seed, &out),
        Command::Run { config, out, deterministic, seed } => commands::run(&config, &out, deterministic, seed),
        Command::Aggregate { records, out } => commands::aggregate(&records, &out),
        Command::Analyze { aggregate, kind, families, out } => commands::analyze(&aggregate, kind, &families, &out),
        Command::Report { records, out } => commands::report(&records, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
