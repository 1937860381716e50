//! Shared request parsing and sequence sourcing for all subcommands.

use crate::Fail;
use forest_core::{Kind, Mode, PatternSet};
use seqgen::{
    closed_form_family, count_bruteforce, exp_transform, parse_bfile, parse_cache,
    recognize_family, write_cache, CountSequence,
};
use std::fs;
use std::path::{Path, PathBuf};

/// Environment variable overriding the default cache directory.
pub const CACHE_DIR_ENV: &str = "FORESTS_CACHE_DIR";

/// Default data depth for enumerated sources.
pub const DEFAULT_BRUTE_DEPTH: usize = 8;
/// Default data depth for closed-form sources.
pub const DEFAULT_CLOSED_DEPTH: usize = 200;

pub fn parse_kind(text: &str) -> Result<Kind, Fail> {
    Kind::parse(text).map_err(Fail::from)
}

pub fn parse_mode(text: &str) -> Result<Mode, Fail> {
    Mode::parse(text)
        .ok_or_else(|| Fail::Usage(format!("unknown mode '{}' (trees or forests)", text)))
}

/// Pattern-set syntax of the command line: comma-separated one-line words,
/// bracketed lists for long patterns, or the word `empty`.
pub fn parse_set(text: &str, kind: Kind) -> Result<PatternSet, Fail> {
    if text.trim() == "empty" {
        return Ok(PatternSet::empty(kind));
    }
    PatternSet::parse(text, kind).map_err(Fail::from)
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
}

pub fn parse_format(text: &str) -> Result<Format, Fail> {
    match text {
        "table" => Ok(Format::Table),
        "csv" => Ok(Format::Csv),
        other => Err(Fail::Usage(format!("unknown format '{}' (table or csv)", other))),
    }
}

/// Where a sequence comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Closed form when the family is recognized, else brute force.
    Auto,
    Brute,
    ClosedForm,
    /// Ingest a b-file from this path.
    Bfile(PathBuf),
    /// Read a previously cached sequence.
    Cache,
}

impl Source {
    pub fn parse(text: &str) -> Result<Source, Fail> {
        match text {
            "auto" => Ok(Source::Auto),
            "brute" => Ok(Source::Brute),
            "closed-form" => Ok(Source::ClosedForm),
            "cache" => Ok(Source::Cache),
            other => match other.strip_prefix("bfile:") {
                Some(path) if !path.is_empty() => Ok(Source::Bfile(PathBuf::from(path))),
                _ => Err(Fail::Usage(format!(
                    "unknown source '{}' (auto, brute, closed-form, bfile:PATH, cache)",
                    other
                ))),
            },
        }
    }
}

/// Cache directory: explicit flag, then the environment override, then
/// `.forests-cache` under the working directory.
pub fn cache_dir(flag: &Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.clone();
    }
    if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from(".forests-cache")
}

/// Cache file for one (set, kind, mode) key.  The normalized set text is
/// made filename-safe; complement-equivalent sets keep separate entries.
pub fn cache_file(dir: &Path, set: &PatternSet, mode: Mode) -> PathBuf {
    let label: String = set
        .normalized_text()
        .chars()
        .map(|c| match c {
            ',' => '-',
            '[' => '(',
            ']' => ')',
            other => other,
        })
        .collect();
    let label = if label.is_empty() { "empty".to_string() } else { label };
    dir.join(format!("{}.{}.{}.seq", label, set.kind().as_str(), mode.as_str()))
}

/// Writes a sequence into the cache, creating the directory if needed.
pub fn store_in_cache(dir: &Path, seq: &CountSequence, set: &PatternSet) -> Result<(), Fail> {
    fs::create_dir_all(dir)?;
    fs::write(cache_file(dir, set, seq.mode()), write_cache(seq))?;
    Ok(())
}

/// Reads a cached sequence and checks it against the requested key.
pub fn load_from_cache(
    dir: &Path,
    set: &PatternSet,
    mode: Mode,
) -> Result<CountSequence, Fail> {
    let path = cache_file(dir, set, mode);
    let text = fs::read_to_string(&path).map_err(|e| {
        Fail::Usage(format!(
            "no cache entry at {} ({}); run `forests count` first or pass another --source",
            path.display(),
            e
        ))
    })?;
    let seq = parse_cache(&text)?;
    if seq.mode() != mode || seq.kind() != set.kind() || seq.label() != set.normalized_text() {
        return Err(Fail::Usage(format!(
            "cache entry {} holds {{{}}} {} {}, not the requested key",
            path.display(),
            seq.label(),
            seq.kind(),
            seq.mode()
        )));
    }
    Ok(seq)
}

/// Resolves one sequence through index `n` from the given source.
pub fn sequence(
    set: &PatternSet,
    mode: Mode,
    n: usize,
    cap: usize,
    source: &Source,
    dir: &Path,
) -> Result<CountSequence, Fail> {
    match source {
        Source::Auto => {
            if recognize_family(set).is_some() {
                Ok(closed_form_family(set, n)?.pick(mode))
            } else {
                Ok(count_bruteforce(set, mode, n, cap)?)
            }
        }
        Source::Brute => Ok(count_bruteforce(set, mode, n, cap)?),
        Source::ClosedForm => Ok(closed_form_family(set, n)?.pick(mode)),
        Source::Bfile(path) => {
            let text = fs::read_to_string(path)?;
            let seq = parse_bfile(&text, mode, set.kind(), &set.normalized_text())?;
            clip(seq, n)
        }
        Source::Cache => clip(load_from_cache(dir, set, mode)?, n),
    }
}

/// Truncates ingested data down to the requested depth; refuses when the
/// data falls short, because silently shallow answers would mislabel
/// everything derived from them.
fn clip(seq: CountSequence, n: usize) -> Result<CountSequence, Fail> {
    if seq.n_max() < n {
        return Err(Fail::Usage(format!(
            "data reaches index {}, but index {} was requested",
            seq.n_max(),
            n
        )));
    }
    if seq.n_max() == n {
        return Ok(seq);
    }
    Ok(seq.truncated(n)?)
}

/// Small convenience so `sequence` can pick a mode out of a family result.
trait PickMode {
    fn pick(self, mode: Mode) -> CountSequence;
}

impl PickMode for seqgen::FamilyCounts {
    fn pick(self, mode: Mode) -> CountSequence {
        match mode {
            Mode::Trees => self.trees,
            Mode::Forests => self.forests,
        }
    }
}

/// Tree and forest data for a depth-`n` bound: `t` through `n + 1` and `f`
/// through at least `n`.  Returns the pair and the depth actually used.
pub fn limit_data(
    set: &PatternSet,
    requested_n: Option<usize>,
    cap: usize,
    source: &Source,
    dir: &Path,
) -> Result<(CountSequence, CountSequence, usize), Fail> {
    match source {
        Source::Auto => {
            if recognize_family(set).is_some() {
                limit_data(set, requested_n, cap, &Source::ClosedForm, dir)
            } else {
                limit_data(set, requested_n, cap, &Source::Brute, dir)
            }
        }
        Source::Brute => {
            let n = requested_n.unwrap_or(DEFAULT_BRUTE_DEPTH);
            let t = count_bruteforce(set, Mode::Trees, n + 1, cap)?;
            let f = count_bruteforce(set, Mode::Forests, n, cap)?;
            Ok((t, f, n))
        }
        Source::ClosedForm => {
            let n = requested_n.unwrap_or(DEFAULT_CLOSED_DEPTH);
            let counts = closed_form_family(set, n + 1)?;
            Ok((counts.trees, counts.forests, n))
        }
        Source::Bfile(path) => {
            let text = fs::read_to_string(path)?;
            let t = parse_bfile(&text, Mode::Trees, set.kind(), &set.normalized_text())?;
            let n = match requested_n {
                Some(n) => n,
                None => t.n_max().checked_sub(1).ok_or_else(|| {
                    Fail::Usage("the b-file must reach at least index 1".to_string())
                })?,
            };
            if t.n_max() < n + 1 {
                return Err(Fail::Usage(format!(
                    "depth {} needs tree counts through index {}, the b-file stops at {}",
                    n,
                    n + 1,
                    t.n_max()
                )));
            }
            let f = exp_transform(&t)?;
            Ok((t, f, n))
        }
        Source::Cache => {
            let t = load_from_cache(dir, set, Mode::Trees)?;
            let n = match requested_n {
                Some(n) => n,
                None => t.n_max().checked_sub(1).ok_or_else(|| {
                    Fail::Usage("the cached sequence must reach at least index 1".to_string())
                })?,
            };
            if t.n_max() < n + 1 {
                return Err(Fail::Usage(format!(
                    "depth {} needs tree counts through index {}, the cache stops at {}",
                    n,
                    n + 1,
                    t.n_max()
                )));
            }
            let f = exp_transform(&t)?;
            Ok((t, f, n))
        }
    }
}
