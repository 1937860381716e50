//! `forests stats` — exact or sampled distributions of structural
//! statistics.

use crate::data::{self, Format};
use crate::report::{align, format_sig};
use crate::Fail;
use clap::Args;
use forest_core::DEFAULT_CAP;
use foreststat::{
    component_count_dist, component_size_profile, moments_report, root_label_dist,
    sample_statistics, DiscretePMF, SampleJob, SizeProfile, DEFAULT_RATE_FLOOR,
};
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Args)]
pub struct StatsArgs {
    /// Pattern set: "213", "123,231", or "empty"
    #[arg(long)]
    set: String,
    /// Containment kind: classical or consecutive
    #[arg(long, default_value = "classical")]
    kind: String,
    /// Vertex count
    #[arg(long)]
    n: usize,
    /// Statistic: components, root, or sizes
    #[arg(long)]
    stat: String,
    /// Sample this many forests instead of enumerating exactly
    #[arg(long)]
    sample: Option<u64>,
    /// Sampler seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampler substream (shard id under one seed)
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Abort sampling when the acceptance rate drops below this
    #[arg(long, default_value_t = DEFAULT_RATE_FLOOR)]
    rate_floor: f64,
    /// Enumeration budget for the exact path
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Output format: table or csv
    #[arg(long, default_value = "table")]
    format: String,
}

pub fn run(args: &StatsArgs) -> Result<(), Fail> {
    let kind = data::parse_kind(&args.kind)?;
    let format = data::parse_format(&args.format)?;
    let set = data::parse_set(&args.set, kind)?;

    match (args.stat.as_str(), args.sample) {
        ("components", None) => {
            let pmf = component_count_dist(&set, args.n, args.cap)?;
            emit_pmf("components", args.n, &pmf, None, format);
        }
        ("components", Some(count)) => {
            let report = run_sampler(&set, args, count)?;
            let pmf = report.component_count_pmf()?;
            emit_pmf("components", args.n, &pmf, Some(report.acceptance_rate()), format);
        }
        ("root", None) => {
            let pmf = root_label_dist(&set, args.n, args.cap)?;
            emit_pmf("root", args.n, &pmf, None, format);
        }
        ("root", Some(_)) => {
            return Err(Fail::Usage(
                "the root statistic ranges over trees and is exact-only; \
                 drop --sample"
                    .to_string(),
            ));
        }
        ("sizes", None) => {
            let profile = component_size_profile(&set, args.n, args.cap)?;
            emit_sizes(args.n, &profile.expected, Some(profile.forests), None, format);
        }
        ("sizes", Some(count)) => {
            let report = run_sampler(&set, args, count)?;
            emit_sizes(
                args.n,
                &report.expected_size_counts(),
                None,
                Some(report.acceptance_rate()),
                format,
            );
        }
        (other, _) => {
            return Err(Fail::Usage(format!(
                "unknown statistic '{}' (components, root, or sizes)",
                other
            )));
        }
    }
    Ok(())
}

fn run_sampler(
    set: &forest_core::PatternSet,
    args: &StatsArgs,
    count: u64,
) -> Result<foreststat::SampleReport, Fail> {
    let job = SampleJob::new(set.clone(), args.n, count, args.seed)
        .with_stream(args.stream)
        .with_rate_floor(args.rate_floor);
    Ok(sample_statistics(&job)?)
}

fn emit_pmf(
    statistic: &str,
    n: usize,
    pmf: &DiscretePMF,
    acceptance: Option<f64>,
    format: Format,
) {
    if format == Format::Csv {
        println!("{}", DiscretePMF::csv_header());
        print!("{}", pmf.csv_rows(statistic, n));
        return;
    }
    match (pmf.sample_size(), acceptance) {
        (Some(samples), Some(rate)) => println!(
            "{} at n = {} (sampled: {} forests, acceptance rate {})",
            statistic,
            n,
            samples,
            format_sig(rate, 6)
        ),
        _ => println!("{} at n = {} (exact)", statistic, n),
    }
    let mut rows = vec![header_row(&["point", "probability", "float"])];
    for (&x, p) in pmf.support().iter().zip(pmf.probabilities()) {
        rows.push(vec![x.to_string(), frac(p), format_sig(rat_f64(p), 6)]);
    }
    print!("{}", align(&rows));
    let m = moments_report(pmf);
    println!("mean             {} = {}", frac(&m.mean), format_sig(rat_f64(&m.mean), 6));
    println!(
        "variance         {} = {}",
        frac(&m.variance),
        format_sig(rat_f64(&m.variance), 6)
    );
    match m.skewness {
        Some(v) => println!("skewness         {}", format_sig(v, 6)),
        None => println!("skewness         undefined (point mass)"),
    }
    match m.excess_kurtosis {
        Some(v) => println!("excess kurtosis  {}", format_sig(v, 6)),
        None => println!("excess kurtosis  undefined (point mass)"),
    }
}

fn emit_sizes(
    n: usize,
    expected: &[BigRational],
    class_size: Option<u64>,
    acceptance: Option<f64>,
    format: Format,
) {
    if format == Format::Csv {
        println!("{}", DiscretePMF::csv_header());
        for (i, e) in expected.iter().enumerate() {
            println!("sizes,{},{},{},{},{:.6}", n, i + 1, e.numer(), e.denom(), rat_f64(e));
        }
        return;
    }
    match (class_size, acceptance) {
        (Some(total), _) => println!(
            "expected component counts by size at n = {} (exact, {} forests)",
            n, total
        ),
        (None, Some(rate)) => println!(
            "expected component counts by size at n = {} (sampled, acceptance rate {})",
            n,
            format_sig(rate, 6)
        ),
        _ => println!("expected component counts by size at n = {}", n),
    }
    let mut rows = vec![header_row(&["size k", "E[count]", "float", "1/k reference"])];
    for (i, e) in expected.iter().enumerate() {
        let reference = SizeProfile::reference(i + 1);
        rows.push(vec![
            (i + 1).to_string(),
            frac(e),
            format_sig(rat_f64(e), 6),
            format_sig(rat_f64(&reference), 6),
        ]);
    }
    print!("{}", align(&rows));
}

fn header_row(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn frac(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rat_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
