//! Internal cross-checks for the truncated series construction.
//!
//! Two independent ways to pin down the series `F = C / (1 - D)`:
//!
//! 1. Coefficient identities: reconstruct `F` from the recurrence
//!    `f~_m = c_m + sum_{j>=1} d_j f~_{m-j}` and verify that `k! [x^k] F`
//!    is a whole number, equals the true forest count for `k <= n + 1`,
//!    and never exceeds it elsewhere.
//! 2. Direct enumeration: `k! [x^k] F` must equal the number of avoiding
//!    forests on `{1, ..., k}` in which every vertex with more than `n`
//!    proper descendants is smaller than all of them.

use crate::series::{a_coeffs, cd_exact};
use crate::LimitError;
use forest_core::{Classification, EnumJob, Mode, PatternSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use seqgen::CountSequence;

/// Result of the coefficient-identity check.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub label: String,
    pub n: usize,
    /// `k! [x^k] F` for `k = 0..=k_max`.
    pub counts: Vec<BigInt>,
    /// Highest index where equality with the forest data was verified.
    pub equal_checked: usize,
    /// Highest index where domination by the forest data was verified.
    pub dominated_checked: usize,
    pub equality_failures: Vec<usize>,
    pub domination_failures: Vec<usize>,
}

impl ConsistencyReport {
    pub fn is_clean(&self) -> bool {
        self.equality_failures.is_empty() && self.domination_failures.is_empty()
    }
}

/// `k! [x^k] F` for `k = 0..=k_max`, reconstructed from the differences.
fn series_counts(a: &[BigInt], k_max: usize) -> Result<Vec<BigInt>, LimitError> {
    let (c, d) = cd_exact(a, k_max);
    let mut f_tilde: Vec<BigRational> = Vec::with_capacity(k_max + 1);
    for m in 0..=k_max {
        let mut acc = c[m].clone();
        for j in 1..=m {
            acc += &d[j] * &f_tilde[m - j];
        }
        f_tilde.push(acc);
    }
    let mut counts = Vec::with_capacity(k_max + 1);
    let mut fact = BigInt::one();
    for (k, coeff) in f_tilde.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        let scaled = coeff * BigRational::from(fact.clone());
        if !scaled.is_integer() {
            return Err(LimitError::NonIntegralCoefficient { k });
        }
        let v = scaled.to_integer();
        if v.is_negative() {
            return Err(LimitError::NonIntegralCoefficient { k });
        }
        counts.push(v);
    }
    Ok(counts)
}

/// Verify the reconstruction of `F` against forest data: integrality
/// everywhere, equality through `n + 1`, domination wherever data reaches.
pub fn fn_consistency(
    set: &PatternSet,
    t: &CountSequence,
    f: &CountSequence,
    n: usize,
    k_max: usize,
) -> Result<ConsistencyReport, LimitError> {
    let covered = set.classify() == Classification::Covered;
    let a = a_coeffs(t, f, n, covered)?;
    let counts = series_counts(&a, k_max)?;
    let equal_checked = k_max.min(n + 1).min(f.n_max());
    let dominated_checked = k_max.min(f.n_max());
    let mut equality_failures = Vec::new();
    let mut domination_failures = Vec::new();
    for k in 0..=equal_checked {
        if counts[k] != f.values()[k] {
            equality_failures.push(k);
        }
    }
    for k in 0..=dominated_checked {
        if counts[k] > f.values()[k] {
            domination_failures.push(k);
        }
    }
    Ok(ConsistencyReport {
        label: set.normalized_text(),
        n,
        counts,
        equal_checked,
        dominated_checked,
        equality_failures,
        domination_failures,
    })
}

/// Result of the enumeration cross-check.
#[derive(Clone, Debug)]
pub struct ClassCheckReport {
    pub label: String,
    pub n: usize,
    pub k_max: usize,
    /// `k! [x^k] F` from the series reconstruction.
    pub series_counts: Vec<BigInt>,
    /// Avoiding forests on `{1, ..., k}` in which every vertex with more
    /// than `n` proper descendants is smaller than all of them.
    pub class_counts: Vec<BigInt>,
    pub mismatches: Vec<usize>,
}

impl ClassCheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Membership test for the combinatorial class counted by the series: no
/// vertex may have more than `n_bound` proper descendants while one of them
/// carries a smaller label.
fn in_class(parents: &[u32], n_bound: usize) -> bool {
    let k = parents.len();
    let mut desc_count = vec![0usize; k + 1];
    let mut has_smaller = vec![false; k + 1];
    for v in 1..=k {
        let mut w = parents[v - 1] as usize;
        while w != 0 {
            desc_count[w] += 1;
            if v < w {
                has_smaller[w] = true;
            }
            w = parents[w - 1] as usize;
        }
    }
    (1..=k).all(|w| desc_count[w] <= n_bound || !has_smaller[w])
}

/// Compare the series reconstruction against direct enumeration of the
/// class it counts.
///
/// The identity hinges on grafting a subtree-minimal vertex above a forest:
/// any pattern instance created that way would have its first entry equal
/// to the instance minimum, so the construction is avoidance-preserving
/// exactly when no pattern starts with 1.  Sets with a one-start pattern
/// are rejected — the class and the series genuinely count different
/// things there.
pub fn script_class_check(
    set: &PatternSet,
    t: &CountSequence,
    f: &CountSequence,
    n: usize,
    k_max: usize,
    cap: usize,
) -> Result<ClassCheckReport, LimitError> {
    if set.has_one_start() {
        return Err(LimitError::BadRequest(format!(
            "the enumeration identity requires no pattern starting at 1; {{{}}} has one",
            set.normalized_text()
        )));
    }
    let covered = set.classify() == Classification::Covered;
    let a = a_coeffs(t, f, n, covered)?;
    let series_counts = series_counts(&a, k_max)?;
    let mut class_counts = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let job = EnumJob::new(k, set.clone(), Mode::Forests).with_cap(cap);
        let mut count = BigInt::zero();
        forest_core::visit_avoiding(&job, |parents| {
            if in_class(parents, n) {
                count += 1;
            }
        })?;
        class_counts.push(count);
    }
    let mismatches = (0..=k_max).filter(|&k| series_counts[k] != class_counts[k]).collect();
    Ok(ClassCheckReport {
        label: set.normalized_text(),
        n,
        k_max,
        series_counts,
        class_counts,
        mismatches,
    })
}
