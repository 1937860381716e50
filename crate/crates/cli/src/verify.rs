//! `forests verify` — cross-module verification suites.
//!
//! Each suite prints one `suite NAME: pass|FAIL` line plus counterexample
//! details; any failure turns into the suite-failure exit code.

use crate::data::{self, Source};
use crate::report::format_sig;
use crate::Fail;
use clap::Args;
use forest_core::{Classification, Mode, PatternSet, DEFAULT_CAP};
use num_bigint::BigInt;
use num_traits::Zero;
use seqgen::{
    check_sandwich, count_bruteforce, exp_transform, exp_transform_values, log_transform_values,
    parse_bfile, CountSequence,
};
use std::path::{Path, PathBuf};
use swlimit::{fn_consistency, limit_lower_bound, BoundRequest};

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite: cayley, roundtrip, sandwich, consistency, monotonicity, or all
    #[arg(long)]
    suite: String,
    /// Pattern set for the set-specific suites
    #[arg(long)]
    set: Option<String>,
    /// Containment kind: classical or consecutive
    #[arg(long, default_value = "classical")]
    kind: String,
    /// Suite size: max vertices (cayley), tree-data depth (sandwich),
    /// series depth (consistency), max data depth (monotonicity)
    #[arg(long)]
    n: Option<usize>,
    /// Seed for the randomized round-trip cases
    #[arg(long, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Data source for the set-specific suites
    #[arg(long, default_value = "auto")]
    source: String,
    /// Enumeration budget for brute-force sources
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Cache directory (default: $FORESTS_CACHE_DIR or .forests-cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

struct Outcome {
    name: &'static str,
    passed: bool,
    lines: Vec<String>,
}

pub fn run(args: &VerifyArgs) -> Result<(), Fail> {
    let kind = data::parse_kind(&args.kind)?;
    let source = Source::parse(&args.source)?;
    let dir = data::cache_dir(&args.cache_dir);
    let chosen = match &args.set {
        Some(text) => Some(data::parse_set(text, kind)?),
        None => None,
    };
    let set_or = |fallback: &str| -> Result<PatternSet, Fail> {
        match &chosen {
            Some(s) => Ok(s.clone()),
            None => data::parse_set(fallback, kind),
        }
    };

    let outcomes = match args.suite.as_str() {
        "cayley" => vec![cayley(args.n.unwrap_or(7), args.cap)?],
        "roundtrip" => vec![roundtrip(args.seed)],
        "sandwich" => vec![sandwich(
            &set_or("132,231,321")?,
            args.n.unwrap_or(9),
            args.cap,
            &source,
            &dir,
        )?],
        "consistency" => vec![consistency(
            &set_or("213")?,
            args.n.unwrap_or(4),
            args.cap,
            &source,
            &dir,
        )?],
        "monotonicity" => vec![monotonicity(
            &set_or("213")?,
            args.n.unwrap_or(6),
            args.cap,
            &source,
            &dir,
        )?],
        "all" => vec![
            cayley(7, args.cap)?,
            roundtrip(args.seed),
            sandwich(&set_or("132,231,321")?, 9, args.cap, &source, &dir)?,
            consistency(&set_or("213")?, 4, args.cap, &source, &dir)?,
            monotonicity(&set_or("213")?, 6, args.cap, &source, &dir)?,
        ],
        other => {
            return Err(Fail::Usage(format!(
                "unknown suite '{}' (cayley, roundtrip, sandwich, consistency, monotonicity, all)",
                other
            )))
        }
    };

    let mut failed = Vec::new();
    for outcome in &outcomes {
        println!("suite {}: {}", outcome.name, if outcome.passed { "pass" } else { "FAIL" });
        for line in &outcome.lines {
            println!("    {}", line);
        }
        if !outcome.passed {
            failed.push(outcome.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Fail::Suite(format!("failed: {}", failed.join(", "))))
    }
}

/// Unrestricted totals against the closed forms `n^(n-1)` / `(n+1)^(n-1)`.
fn cayley(n_max: usize, cap: usize) -> Result<Outcome, Fail> {
    let empty = PatternSet::empty(forest_core::Kind::Classical);
    let t = count_bruteforce(&empty, Mode::Trees, n_max, cap)?;
    let f = count_bruteforce(&empty, Mode::Forests, n_max, cap)?;
    let mut lines = Vec::new();
    for n in 0..=n_max {
        let (t_want, f_want) = if n == 0 {
            (BigInt::zero(), BigInt::from(1))
        } else {
            (
                BigInt::from(n as u64).pow(n as u32 - 1),
                BigInt::from(n as u64 + 1).pow(n as u32 - 1),
            )
        };
        if *t.value(n) != t_want {
            lines.push(format!("t_{} = {} but the formula gives {}", n, t.value(n), t_want));
        }
        if *f.value(n) != f_want {
            lines.push(format!("f_{} = {} but the formula gives {}", n, f.value(n), f_want));
        }
    }
    let passed = lines.is_empty();
    if passed {
        lines.push(format!("exact match for n <= {}", n_max));
    }
    Ok(Outcome { name: "cayley", passed, lines })
}

/// Small deterministic generator (SplitMix64) for randomized cases.
struct Rng(u64);
impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Log transform after exp transform is the identity on randomized tree
/// sequences (values level, entries up to 10^30).
fn roundtrip(seed: u64) -> Outcome {
    let mut rng = Rng(seed);
    let bound: u128 = 10u128.pow(30);
    let mut lines = Vec::new();
    for case in 0..100 {
        let len = (rng.next() % 30 + 1) as usize;
        let mut t = vec![BigInt::zero()];
        for _ in 0..len {
            let wide = ((rng.next() as u128) << 64 | rng.next() as u128) % bound;
            t.push(BigInt::from(wide));
        }
        let back = log_transform_values(&exp_transform_values(&t));
        if back != t {
            let k = t.iter().zip(&back).position(|(a, b)| a != b).unwrap_or(0);
            lines.push(format!(
                "case {} (seed {}): round trip diverges at index {}: {} became {}",
                case, seed, k, t[k], back[k]
            ));
        }
    }
    let passed = lines.is_empty();
    if passed {
        lines.push(format!("100 randomized sequences, seed {}", seed));
    }
    Outcome { name: "roundtrip", passed, lines }
}

/// Tree/forest data for a set-specific suite: `t` through `t_depth`, `f`
/// through `f_depth`.  Cache and b-file sources carry tree data; forests
/// are derived through the transform.
fn suite_data(
    set: &PatternSet,
    t_depth: usize,
    f_depth: usize,
    cap: usize,
    source: &Source,
    dir: &Path,
) -> Result<(CountSequence, CountSequence), Fail> {
    match source {
        Source::Auto => {
            let inner = if seqgen::recognize_family(set).is_some() {
                Source::ClosedForm
            } else {
                Source::Brute
            };
            suite_data(set, t_depth, f_depth, cap, &inner, dir)
        }
        Source::Brute => Ok((
            count_bruteforce(set, Mode::Trees, t_depth, cap)?,
            count_bruteforce(set, Mode::Forests, f_depth, cap)?,
        )),
        Source::ClosedForm => {
            let counts = seqgen::closed_form_family(set, t_depth.max(f_depth))?;
            Ok((counts.trees.truncated(t_depth)?, counts.forests.truncated(f_depth)?))
        }
        Source::Cache | Source::Bfile(_) => {
            let full = match source {
                Source::Bfile(path) => {
                    let text = std::fs::read_to_string(path)?;
                    parse_bfile(&text, Mode::Trees, set.kind(), &set.normalized_text())?
                }
                _ => data::load_from_cache(dir, set, Mode::Trees)?,
            };
            let deep = t_depth.max(f_depth);
            if full.n_max() < deep {
                return Err(Fail::Usage(format!(
                    "tree data reaches index {}, the suite needs {}",
                    full.n_max(),
                    deep
                )));
            }
            let f = exp_transform(&full.truncated(f_depth)?)?;
            Ok((full.truncated(t_depth)?, f))
        }
    }
}

/// Both sides of the growth sandwich; a lower-side violation is an
/// integrity failure exactly on sets carrying the structural guarantee.
fn sandwich(
    set: &PatternSet,
    n: usize,
    cap: usize,
    source: &Source,
    dir: &Path,
) -> Result<Outcome, Fail> {
    let f_depth = n.saturating_sub(1);
    let (t, f) = suite_data(set, n, f_depth, cap, source, dir)?;
    let classification = set.classify();
    let report = check_sandwich(&t, &f, Some(classification))?;
    let mut lines = Vec::new();
    for &k in &report.lower_violations {
        let note = if classification == Classification::Covered {
            "covered set: the lower inequality is not guaranteed"
        } else {
            "INTEGRITY: a guaranteed inequality broke, the data is corrupt"
        };
        lines.push(format!(
            "lower f_k <= t_(k+1) violated at k = {}: f_{} = {} > t_{} = {} ({})",
            k,
            k,
            f.value(k),
            k + 1,
            t.value(k + 1),
            note
        ));
    }
    for &k in &report.upper_violations {
        lines.push(format!(
            "upper t_k <= k f_(k-1) violated at k = {}: t_{} = {}, f_{} = {} (INTEGRITY)",
            k,
            k,
            t.value(k),
            k - 1,
            f.value(k - 1)
        ));
    }
    let passed = !report.integrity_breach && report.upper_violations.is_empty();
    if report.clean() {
        lines.push(format!(
            "both inequalities hold over the checked ranges (t to {}, f to {})",
            t.n_max(),
            f.n_max()
        ));
    }
    Ok(Outcome { name: "sandwich", passed, lines })
}

/// Series reconstruction against forest data: equality through `n + 1`,
/// domination through the data horizon.
fn consistency(
    set: &PatternSet,
    n: usize,
    cap: usize,
    source: &Source,
    dir: &Path,
) -> Result<Outcome, Fail> {
    let k_max = (n + 1).max(8);
    let (t, f) = suite_data(set, n + 1, k_max, cap, source, dir)?;
    let report = fn_consistency(set, &t, &f, n, k_max)?;
    let mut lines = Vec::new();
    for &k in &report.equality_failures {
        lines.push(format!(
            "k! [x^k] F_n = {} differs from f_{} = {} inside the guaranteed range",
            report.counts[k],
            k,
            f.value(k)
        ));
    }
    for &k in &report.domination_failures {
        lines.push(format!(
            "k! [x^k] F_n = {} exceeds f_{} = {}",
            report.counts[k],
            k,
            f.value(k)
        ));
    }
    let passed = report.is_clean();
    if passed {
        lines.push(format!(
            "equality through k = {}, domination through k = {}",
            report.equal_checked, report.dominated_checked
        ));
    }
    Ok(Outcome { name: "consistency", passed, lines })
}

/// Certified bounds never decrease in the data depth or in the truncation
/// order (compared exactly, same backend across each sweep).
fn monotonicity(
    set: &PatternSet,
    n: usize,
    cap: usize,
    source: &Source,
    dir: &Path,
) -> Result<Outcome, Fail> {
    let (t, f) = suite_data(set, n + 1, n, cap, source, dir)?;
    let mut lines = Vec::new();
    let mut previous: Option<(usize, swlimit::LimitBound)> = None;
    for depth in 1..=n {
        let req = BoundRequest::new(depth).with_order(120).with_tol_bits(24);
        let bound = limit_lower_bound(set, &t, &f, &req)?;
        if let Some((prev_depth, prev)) = &previous {
            if bound.lower_bound < prev.lower_bound {
                lines.push(format!(
                    "bound decreased from {} (n = {}) to {} (n = {})",
                    format_sig(prev.bound_f64, 9),
                    prev_depth,
                    format_sig(bound.bound_f64, 9),
                    depth
                ));
            }
        }
        previous = Some((depth, bound));
    }
    let mut prev_m: Option<(usize, swlimit::LimitBound)> = None;
    for m in [80usize, 120, 200] {
        let req = BoundRequest::new(n).with_order(m).with_tol_bits(24);
        let bound = limit_lower_bound(set, &t, &f, &req)?;
        if let Some((m_prev, prev)) = &prev_m {
            if bound.lower_bound < prev.lower_bound {
                lines.push(format!(
                    "bound decreased from {} (M = {}) to {} (M = {})",
                    format_sig(prev.bound_f64, 9),
                    m_prev,
                    format_sig(bound.bound_f64, 9),
                    m
                ));
            }
        }
        prev_m = Some((m, bound));
    }
    let passed = lines.is_empty();
    if passed {
        lines.push(format!(
            "nondecreasing over n = 1..={} (M = 120) and M in 80/120/200 at n = {}",
            n, n
        ));
    }
    Ok(Outcome { name: "monotonicity", passed, lines })
}
