//! `forests count` — produce and cache a count sequence.

use crate::data::{self, Format, Source};
use crate::Fail;
use clap::Args;
use forest_core::DEFAULT_CAP;
use seqgen::write_cache;
use std::path::PathBuf;

#[derive(Args)]
pub struct CountArgs {
    /// Pattern set: "213", "123,231", "[10,2,...]", or "empty"
    #[arg(long)]
    set: String,
    /// Containment kind: classical or consecutive
    #[arg(long, default_value = "classical")]
    kind: String,
    /// Sequence mode: trees or forests
    #[arg(long, default_value = "forests")]
    mode: String,
    /// Largest index to produce
    #[arg(long)]
    n: usize,
    /// Data source: auto, brute, closed-form, bfile:PATH, or cache
    #[arg(long, default_value = "auto")]
    source: String,
    /// Enumeration budget for brute-force sources
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Output format: table (cache layout) or csv
    #[arg(long, default_value = "table")]
    format: String,
    /// Cache directory (default: $FORESTS_CACHE_DIR or .forests-cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Compute without writing the result back to the cache
    #[arg(long)]
    no_cache_write: bool,
}

pub fn run(args: &CountArgs) -> Result<(), Fail> {
    let kind = data::parse_kind(&args.kind)?;
    let mode = data::parse_mode(&args.mode)?;
    let format = data::parse_format(&args.format)?;
    let set = data::parse_set(&args.set, kind)?;
    let source = Source::parse(&args.source)?;
    let dir = data::cache_dir(&args.cache_dir);

    let seq = data::sequence(&set, mode, args.n, args.cap, &source, &dir)?;

    match format {
        // The table layout *is* the cache layout, so a cached re-read
        // reproduces these bytes exactly.
        Format::Table => print!("{}", write_cache(&seq)),
        Format::Csv => {
            println!("index,value");
            for (i, v) in seq.values().iter().enumerate() {
                println!("{},{}", i, v);
            }
        }
    }

    if !args.no_cache_write && source != Source::Cache {
        data::store_in_cache(&dir, &seq, &set)?;
    }
    Ok(())
}
