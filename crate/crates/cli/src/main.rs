//! `forests` — command-line driver for pattern-avoiding forest counting,
//! certified growth bounds, statistics, verification suites, and table
//! reproduction.
//!
//! Exit codes: 0 success, 2 parse/usage, 3 enumeration or sampling budget,
//! 4 data integrity, 5 verification-suite failure, 1 I/O and everything
//! else.

mod count;
mod data;
mod limit;
mod report;
mod stats;
mod table;
mod verify;

use clap::{Parser, Subcommand};
use forest_core::{EnumError, PatternError};
use foreststat::StatError;
use seqgen::{BfileError, SeqError};
use std::process::ExitCode;
use swlimit::LimitError;

const EXIT_HELP: &str = "exit codes:\n  \
    0  success\n  \
    1  input/output failure\n  \
    2  unusable request (parse error, covered-set refusal, missing data)\n  \
    3  work budget exceeded (enumeration cap, sampler acceptance floor)\n  \
    4  data integrity violation (counts breaking proven inequalities)\n  \
    5  verification suite failure";

#[derive(Parser)]
#[command(
    name = "forests",
    about = "Exact counting, certified growth bounds, and statistics for \
             forests avoiding permutation patterns",
    after_help = EXIT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Produce a count sequence (trees or forests) and cache it
    Count(count::CountArgs),
    /// Certified lower bound for the growth limit of an avoiding family
    Limit(limit::LimitArgs),
    /// Exact or sampled distributions of structural statistics
    Stats(stats::StatsArgs),
    /// Cross-module verification suites
    Verify(verify::VerifyArgs),
    /// Bound/envelope table across several pattern sets
    Table(table::TableArgs),
}

/// A command failure routed to one of the documented exit classes.
#[derive(Debug)]
pub enum Fail {
    Io(String),
    Usage(String),
    Budget(String),
    Integrity(String),
    Suite(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Io(_) => 1,
            Fail::Usage(_) => 2,
            Fail::Budget(_) => 3,
            Fail::Integrity(_) => 4,
            Fail::Suite(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Io(m) | Fail::Usage(m) | Fail::Budget(m) | Fail::Integrity(m)
            | Fail::Suite(m) => m,
        }
    }
}

impl From<PatternError> for Fail {
    fn from(e: PatternError) -> Fail {
        Fail::Usage(e.to_string())
    }
}

impl From<EnumError> for Fail {
    fn from(e: EnumError) -> Fail {
        match e {
            EnumError::CapExceeded { .. } => Fail::Budget(e.to_string()),
        }
    }
}

impl From<SeqError> for Fail {
    fn from(e: SeqError) -> Fail {
        match e {
            // Invalid numeric content in ingested or derived data.
            SeqError::BadIndexZero { .. }
            | SeqError::BadIndexOne { .. }
            | SeqError::Negative { .. }
            | SeqError::AboveUnrestrictedCap { .. } => Fail::Integrity(e.to_string()),
            SeqError::Enumeration(inner) => inner.into(),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<BfileError> for Fail {
    fn from(e: BfileError) -> Fail {
        match e {
            BfileError::Sequence(inner) => inner.into(),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<LimitError> for Fail {
    fn from(e: LimitError) -> Fail {
        match e {
            LimitError::NegativePrefix { .. } | LimitError::NonIntegralCoefficient { .. } => {
                Fail::Integrity(e.to_string())
            }
            LimitError::Sequence(inner) => inner.into(),
            LimitError::Enumeration(inner) => inner.into(),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<StatError> for Fail {
    fn from(e: StatError) -> Fail {
        match e {
            StatError::Enumeration(inner) => inner.into(),
            StatError::AcceptanceRate { .. } => Fail::Budget(e.to_string()),
            StatError::BadPmf(_) => Fail::Integrity(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Fail {
        Fail::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(args) => count::run(args),
        Command::Limit(args) => limit::run(args),
        Command::Stats(args) => stats::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Table(args) => table::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(fail) => {
            eprintln!("error: {}", fail.message());
            ExitCode::from(fail.code())
        }
    }
}
