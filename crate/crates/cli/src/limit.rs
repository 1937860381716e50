//! `forests limit` — certified lower bound for the growth limit.

use crate::data::{self, Source};
use crate::report::format_sig;
use crate::Fail;
use clap::Args;
use forest_core::{Classification, DEFAULT_CAP};
use std::path::PathBuf;
use swlimit::{limit_lower_bound, ratio_diagnostic, BoundRequest, DEFAULT_PRECISION, DEFAULT_TOL_BITS};

#[derive(Args)]
pub struct LimitArgs {
    /// Pattern set: "213", "123,231", or "empty"
    #[arg(long)]
    set: String,
    /// Containment kind: classical or consecutive
    #[arg(long, default_value = "classical")]
    kind: String,
    /// Data depth n (differences a_0..a_n enter the series); defaults to 8
    /// for enumerated data, 200 for closed forms, full depth for ingested
    #[arg(long)]
    n: Option<usize>,
    /// Series truncation order M (default: adaptive)
    #[arg(long)]
    order: Option<usize>,
    /// Fixed-point fractional bits
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Bisection grid bits: the root is bracketed to within 2^-tol_bits
    #[arg(long, default_value_t = DEFAULT_TOL_BITS)]
    tol_bits: u32,
    /// Data source: auto, brute, closed-form, bfile:PATH, or cache
    #[arg(long, default_value = "auto")]
    source: String,
    /// Enumeration budget for brute-force sources
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Also print the certified bound as an exact rational
    #[arg(long)]
    exact: bool,
    /// Proceed on a covered set; the result is a heuristic, not a theorem
    #[arg(long)]
    override_covered: bool,
    /// Cache directory (default: $FORESTS_CACHE_DIR or .forests-cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

pub fn run(args: &LimitArgs) -> Result<(), Fail> {
    let kind = data::parse_kind(&args.kind)?;
    let set = data::parse_set(&args.set, kind)?;
    let source = Source::parse(&args.source)?;
    let dir = data::cache_dir(&args.cache_dir);

    let classification = set.classify();
    if classification == Classification::Covered && !args.override_covered {
        return Err(Fail::Usage(format!(
            "{{{}}} is covered: it contains both a pattern starting with 1 and a pattern \
             starting with its maximum, so the hypothesis behind the lower-bound \
             construction (t_(k+1) >= f_k) is not guaranteed. \
             Pass --override-covered to compute an unproven heuristic value anyway.",
            set.normalized_text()
        )));
    }

    let (t, f, n) = data::limit_data(&set, args.n, args.cap, &source, &dir)?;
    let mut req = BoundRequest::new(n).with_tol_bits(args.tol_bits);
    req.m = args.order;
    req.precision = args.precision;
    let bound = limit_lower_bound(&set, &t, &f, &req)?;
    let envelope = ratio_diagnostic(&f, n.min(f.n_max()))?
        .rows
        .last()
        .map(|row| (row.k, row.value));

    println!("set             {{{}}} {}", bound.label, bound.kind);
    println!("classification  {}", classification);
    println!("data depth n    {}  ({})", n, t.provenance());
    println!(
        "order M         {}{}{}",
        bound.m,
        if args.order.is_some() { "" } else { "  (adaptive)" },
        if bound.capped_m { "  (capped)" } else { "" }
    );
    match bound.precision {
        Some(bits) => println!("backend         fixed-point, {} fractional bits, round-down", bits),
        None => println!("backend         exact rationals"),
    }
    println!("grid            2^-{}", bound.tol_bits);
    println!(
        "x_star          {}  (certified >= series root r_n)",
        format_sig(swlimit::rational_to_f64(&bound.x_star), 6)
    );
    let status = if bound.degenerate {
        "certified, degenerate: all differences vanish, bound = e^-1 floor"
    } else if bound.proven {
        "certified lower bound for the growth limit"
    } else {
        "HEURISTIC ONLY: covered set, hypothesis unproven"
    };
    println!("lower bound     {}  ({})", format_sig(bound.bound_f64, 6), status);
    if let Some((k, value)) = envelope {
        println!(
            "envelope        {}  (f_k^(1/k) / k at k = {}, upper track, unproven)",
            format_sig(value, 6),
            k
        );
    }
    if args.exact {
        println!("x_star exact    {}/{}", bound.x_star.numer(), bound.x_star.denom());
        println!(
            "bound exact     {}/{}",
            bound.lower_bound.numer(),
            bound.lower_bound.denom()
        );
    }
    Ok(())
}
