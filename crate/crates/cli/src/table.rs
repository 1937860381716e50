//! `forests table` — bound/envelope rows across several pattern sets.

use crate::data::{self, Format};
use crate::report::{align, format_sig};
use crate::Fail;
use clap::Args;
use forest_core::{Classification, Kind, Mode, PatternSet, DEFAULT_CAP};
use seqgen::{count_bruteforce, exp_transform, parse_bfile, recognize_family};
use std::collections::BTreeMap;
use std::path::PathBuf;
use swlimit::{limit_lower_bound, ratio_diagnostic, BoundRequest};

#[derive(Args)]
pub struct TableArgs {
    /// Row pattern set (repeatable); defaults to a built-in list
    #[arg(long = "row")]
    rows: Vec<String>,
    /// Containment kind: classical or consecutive
    #[arg(long, default_value = "classical")]
    kind: String,
    /// Data depth for brute-force rows
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Data depth for closed-form rows
    #[arg(long, default_value_t = 400)]
    closed_depth: usize,
    /// Tree b-file for a set, as SET=PATH (repeatable)
    #[arg(long = "bfile")]
    bfiles: Vec<String>,
    /// Enumeration budget for brute-force rows
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Fixed-point fractional bits
    #[arg(long, default_value_t = 256)]
    precision: u32,
    /// Bisection grid bits (coarse by default: every bit costs a full
    /// series evaluation at depth hundreds)
    #[arg(long, default_value_t = 14)]
    tol_bits: u32,
    /// Output format: table or csv
    #[arg(long, default_value = "table")]
    format: String,
}

enum Plan {
    Closed(usize),
    Brute(usize),
    Bfile(PathBuf),
    Missing(String),
}

struct Row {
    label: String,
    n_used: Option<usize>,
    bound: Option<(f64, bool)>,
    envelope: Option<f64>,
    source: String,
}

pub fn run(args: &TableArgs) -> Result<(), Fail> {
    let kind = data::parse_kind(&args.kind)?;
    let format = data::parse_format(&args.format)?;
    let bfiles = parse_bfile_map(&args.bfiles, kind)?;

    let mut rows = Vec::new();
    if args.rows.is_empty() {
        // Built-in list: two closed-form rows, two brute-force rows, and a
        // deep ingestion row that is marked rather than dropped when no
        // external data is supplied.
        for text in ["21", "213,231,312,321", "213", "321"] {
            let set = data::parse_set(text, kind)?;
            let plan = computed_plan(&set, args);
            rows.push(build_row(&set, plan, args)?);
        }
        let deep = data::parse_set("213", kind)?;
        let plan = match bfiles.get(&deep.normalized_text()) {
            Some(path) => Plan::Bfile(path.clone()),
            None => Plan::Missing("supply --bfile 213=PATH for the deep row".to_string()),
        };
        rows.push(build_row(&deep, plan, args)?);
    } else {
        for text in &args.rows {
            let set = data::parse_set(text, kind)?;
            let plan = match bfiles.get(&set.normalized_text()) {
                Some(path) => Plan::Bfile(path.clone()),
                None => computed_plan(&set, args),
            };
            rows.push(build_row(&set, plan, args)?);
        }
    }

    emit(&rows, format);
    Ok(())
}

fn computed_plan(set: &PatternSet, args: &TableArgs) -> Plan {
    if recognize_family(set).is_some() {
        Plan::Closed(args.closed_depth)
    } else {
        Plan::Brute(args.n)
    }
}

fn parse_bfile_map(
    entries: &[String],
    kind: Kind,
) -> Result<BTreeMap<String, PathBuf>, Fail> {
    let mut map = BTreeMap::new();
    for entry in entries {
        let (set_text, path) = entry.split_once('=').ok_or_else(|| {
            Fail::Usage(format!("--bfile wants SET=PATH, got '{}'", entry))
        })?;
        let set = data::parse_set(set_text, kind)?;
        map.insert(set.normalized_text(), PathBuf::from(path));
    }
    Ok(map)
}

fn build_row(set: &PatternSet, plan: Plan, args: &TableArgs) -> Result<Row, Fail> {
    let label = format!("{{{}}}", set.normalized_text());
    let (t, f, n, source) = match plan {
        Plan::Missing(note) => {
            return Ok(Row {
                label,
                n_used: None,
                bound: None,
                envelope: None,
                source: format!("missing: {}", note),
            })
        }
        Plan::Closed(depth) => {
            let counts = seqgen::closed_form_family(set, depth + 1)?;
            (counts.trees, counts.forests, depth, "closed form".to_string())
        }
        Plan::Brute(depth) => {
            let t = count_bruteforce(set, Mode::Trees, depth + 1, args.cap)?;
            let f = count_bruteforce(set, Mode::Forests, depth, args.cap)?;
            (t, f, depth, "brute force".to_string())
        }
        Plan::Bfile(path) => {
            let text = std::fs::read_to_string(&path)?;
            let t = parse_bfile(&text, Mode::Trees, set.kind(), &set.normalized_text())?;
            let n = t.n_max().checked_sub(1).ok_or_else(|| {
                Fail::Usage(format!("{}: the b-file must reach index 1", path.display()))
            })?;
            let f = exp_transform(&t)?;
            (t, f, n, format!("b-file {}", path.display()))
        }
    };

    let envelope = ratio_diagnostic(&f, n.min(f.n_max()))?.rows.last().map(|r| r.value);
    let bound = if set.classify() == Classification::Covered {
        None
    } else {
        let mut req = BoundRequest::new(n).with_tol_bits(args.tol_bits);
        req.precision = args.precision;
        let b = limit_lower_bound(set, &t, &f, &req)?;
        Some((b.bound_f64, b.proven))
    };
    let source = if bound.is_none() {
        format!("{}; covered set, no certified bound", source)
    } else {
        source
    };
    Ok(Row { label, n_used: Some(n), bound, envelope, source })
}

fn emit(rows: &[Row], format: Format) {
    match format {
        Format::Csv => {
            println!("set,n,bound,envelope,source");
            for row in rows {
                println!(
                    "{},{},{},{},{}",
                    row.label,
                    row.n_used.map(|n| n.to_string()).unwrap_or_default(),
                    row.bound.map(|(b, _)| format_sig(b, 6)).unwrap_or_default(),
                    row.envelope.map(|e| format_sig(e, 6)).unwrap_or_default(),
                    row.source.replace(',', ";")
                );
            }
        }
        Format::Table => {
            let mut cells = vec![vec![
                "set".to_string(),
                "n".to_string(),
                "proven bound".to_string(),
                "envelope".to_string(),
                "source".to_string(),
            ]];
            for row in rows {
                cells.push(vec![
                    row.label.clone(),
                    row.n_used.map(|n| n.to_string()).unwrap_or_else(|| "-".to_string()),
                    row.bound
                        .map(|(b, proven)| {
                            if proven {
                                format_sig(b, 6)
                            } else {
                                format!("{} (unproven)", format_sig(b, 6))
                            }
                        })
                        .unwrap_or_else(|| "-".to_string()),
                    row.envelope.map(|e| format_sig(e, 6)).unwrap_or_else(|| "-".to_string()),
                    row.source.clone(),
                ]);
            }
            print!("{}", align(&cells));
            println!();
            println!(
                "bound: certified lower bound for lim f_n^(1/n)/n at the stated depth; \
                 envelope: f_n^(1/n)/n, the unproven upper track."
            );
            println!(
                "sources: closed form = exact recurrence; brute force = exhaustive \
                 enumeration; b-file = ingested data (certified only relative to the file)."
            );
        }
    }
}
