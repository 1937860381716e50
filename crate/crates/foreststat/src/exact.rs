//! Exact distributions by exhaustive enumeration.

use crate::pmf::DiscretePMF;
use crate::StatError;
use forest_core::{visit_avoiding, EnumJob, Mode, PatternSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt::Write as _;

/// Distribution of the root label over avoiding *trees* on `[n]`, uniform
/// over the class.  Support is the full label range `1..=n`; labels no
/// avoiding tree uses carry probability zero.
///
/// Errors: `EmptyClass` when no tree on `[n]` avoids the set (always for
/// `n = 0`), `Enumeration` when `n` exceeds `cap`.
pub fn root_label_dist(set: &PatternSet, n: usize, cap: usize) -> Result<DiscretePMF, StatError> {
    if n == 0 {
        return Err(StatError::EmptyClass { n, label: set.normalized_text() });
    }
    let job = EnumJob::new(n, set.clone(), Mode::Trees).with_cap(cap);
    let mut counts = vec![0u64; n];
    visit_avoiding(&job, |parents| {
        // Trees mode guarantees exactly one root entry.
        let root = parents.iter().position(|&p| p == 0).expect("tree has a root");
        counts[root] += 1;
    })?;
    if counts.iter().all(|&c| c == 0) {
        return Err(StatError::EmptyClass { n, label: set.normalized_text() });
    }
    DiscretePMF::from_counts((1..=n as u64).collect(), &counts, None)
}

/// Distribution of the number of components over avoiding *forests* on
/// `[n]`, uniform over the class.  Support is `1..=n` (just `{0}` for
/// `n = 0`, where the empty forest is the whole class).
///
/// The class is never empty: the all-roots forest has no two comparable
/// vertices, hence no instance of any pattern of length at least two.
pub fn component_count_dist(
    set: &PatternSet,
    n: usize,
    cap: usize,
) -> Result<DiscretePMF, StatError> {
    if n == 0 {
        return DiscretePMF::from_counts(vec![0], &[1], None);
    }
    let job = EnumJob::new(n, set.clone(), Mode::Forests).with_cap(cap);
    let mut counts = vec![0u64; n];
    visit_avoiding(&job, |parents| {
        let roots = parents.iter().filter(|&&p| p == 0).count();
        counts[roots - 1] += 1;
    })?;
    DiscretePMF::from_counts((1..=n as u64).collect(), &counts, None)
}

/// Expected number of size-`k` components over avoiding forests on `[n]`,
/// for every `k`, with the harmonic reference `1/k` that the unrestricted
/// family approaches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeProfile {
    pub n: usize,
    pub label: String,
    /// Size of the avoiding class (the denominator of every expectation).
    pub forests: u64,
    /// `expected[k - 1]` is the exact expectation of the number of
    /// components with exactly `k` vertices.
    pub expected: Vec<BigRational>,
}

impl SizeProfile {
    /// The reference value `1/k` (the `k`-cycle expectation of a uniform
    /// permutation, and the unrestricted-family limit).
    pub fn reference(k: usize) -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(k as u64))
    }

    /// CSV rows `statistic,n,point,numerator,denominator,float` with one
    /// row per component size `k = 1..=n`.
    pub fn csv_rows(&self, statistic: &str) -> String {
        let mut out = String::new();
        for (i, e) in self.expected.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6}",
                statistic,
                self.n,
                i + 1,
                e.numer(),
                e.denom(),
                crate::moments::rat_f64(e)
            );
        }
        out
    }
}

/// Computes the exact component-size profile `E[T_k]`, `k = 1..=n`, over
/// avoiding forests on `[n]`.  The identity `sum_k k * E[T_k] = n` holds
/// because every vertex lies in exactly one component.
pub fn component_size_profile(
    set: &PatternSet,
    n: usize,
    cap: usize,
) -> Result<SizeProfile, StatError> {
    let label = set.normalized_text();
    if n == 0 {
        return Ok(SizeProfile { n, label, forests: 1, expected: Vec::new() });
    }
    let job = EnumJob::new(n, set.clone(), Mode::Forests).with_cap(cap);
    let mut totals = vec![0u64; n];
    let mut forests = 0u64;
    let mut size = vec![0u32; n + 1];
    visit_avoiding(&job, |parents| {
        forests += 1;
        size[1..].fill(0);
        for v in 1..=n as u32 {
            size[component_root(parents, v) as usize] += 1;
        }
        for v in 1..=n {
            if parents[v - 1] == 0 {
                totals[size[v] as usize - 1] += 1;
            }
        }
    })?;
    let denom = BigInt::from(forests);
    let expected = totals
        .iter()
        .map(|&t| BigRational::new(BigInt::from(t), denom.clone()))
        .collect();
    Ok(SizeProfile { n, label, forests, expected })
}

/// Root of the component containing `v` in a parent array.
fn component_root(parents: &[u32], mut v: u32) -> u32 {
    while parents[v as usize - 1] != 0 {
        v = parents[v as usize - 1];
    }
    v
}
