use forest_core::{Classification, Mode};

use crate::sequence::{CountSequence, SeqError};

/// Result of the two-sided growth check between a trees sequence `t` and its
/// forests companion `f`:
///
/// * lower side: `f_k <= t_{k+1}` — every forest on `k` vertices extends to
///   a tree on `k + 1` vertices by grafting a fresh maximal root;
/// * upper side: `t_k <= k * f_{k-1}` — deleting the root of a tree leaves a
///   forest, and the root label can be chosen `k` ways.
///
/// The lower side is a theorem only for uncovered sets, so a violation there
/// is flagged as a data-integrity breach exactly when the caller supplies an
/// uncovered classification; covered sets may violate it legitimately.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SandwichReport {
    pub label: String,
    pub classification: Option<Classification>,
    /// Lower side checked for k in 0..=lower_checked.
    pub lower_checked: Option<usize>,
    /// Upper side checked for k in 1..=upper_checked.
    pub upper_checked: Option<usize>,
    /// k values with f_k > t_{k+1}.
    pub lower_violations: Vec<usize>,
    /// k values with t_k > k * f_{k-1}.
    pub upper_violations: Vec<usize>,
    /// Lower-side violation on a set where the inequality is a theorem.
    pub integrity_breach: bool,
}

impl SandwichReport {
    /// True when neither side has violations.
    pub fn clean(&self) -> bool {
        self.lower_violations.is_empty() && self.upper_violations.is_empty()
    }
}

/// Checks both sides of the growth sandwich over the overlapping index
/// ranges of `t` and `f`.
pub fn check_sandwich(
    t: &CountSequence,
    f: &CountSequence,
    classification: Option<Classification>,
) -> Result<SandwichReport, SeqError> {
    if t.mode() != Mode::Trees {
        return Err(SeqError::WrongMode { expected: Mode::Trees, got: t.mode() });
    }
    if f.mode() != Mode::Forests {
        return Err(SeqError::WrongMode { expected: Mode::Forests, got: f.mode() });
    }
    let mut lower_violations = Vec::new();
    let mut upper_violations = Vec::new();
    // Lower: needs t_{k+1} and f_k.
    let lower_max = (t.n_max().checked_sub(1)).map(|m| m.min(f.n_max()));
    if let Some(m) = lower_max {
        for k in 0..=m {
            if f.value(k) > t.value(k + 1) {
                lower_violations.push(k);
            }
        }
    }
    // Upper: needs t_k and f_{k-1}.
    let upper_max = if t.n_max() >= 1 {
        Some(t.n_max().min(f.n_max() + 1))
    } else {
        None
    };
    if let Some(m) = upper_max {
        for k in 1..=m {
            if *t.value(k) > f.value(k - 1) * k {
                upper_violations.push(k);
            }
        }
    }
    let integrity_breach = classification.is_some_and(|c| c.is_uncovered())
        && !lower_violations.is_empty();
    Ok(SandwichReport {
        label: t.label().to_string(),
        classification,
        lower_checked: lower_max,
        upper_checked: upper_max,
        lower_violations,
        upper_violations,
        integrity_breach,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Provenance;
    use forest_core::Kind;
    use num_bigint::BigInt;

    fn seq(mode: Mode, label: &str, v: &[i64]) -> CountSequence {
        CountSequence::new(
            mode,
            Kind::Classical,
            label.into(),
            v.iter().map(|&x| BigInt::from(x)).collect(),
            Provenance::BruteForce,
        )
        .unwrap()
    }

    #[test]
    fn unrestricted_counts_are_clean_and_tight_above() {
        // t_n = n^(n-1), f_n = (n+1)^(n-1); upper side is tight: t_4 = 64 = 4 * f_3.
        let t = seq(Mode::Trees, "empty", &[0, 1, 2, 9, 64, 625]);
        let f = seq(Mode::Forests, "empty", &[1, 1, 3, 16, 125, 1296]);
        let r = check_sandwich(&t, &f, Some(Classification::UncoveredBoth)).unwrap();
        assert!(r.clean());
        assert!(!r.integrity_breach);
        assert_eq!(r.lower_checked, Some(4));
        assert_eq!(r.upper_checked, Some(5));
        assert_eq!(t.value(4), &(f.value(3) * 4usize));
    }

    #[test]
    fn covered_factorial_family_flags_k8_without_integrity_breach() {
        // {132,231,321}: t_n = n!, f_8 = 394353 > t_9 = 362880.
        let mut tv = vec![0i64];
        let mut fact = 1i64;
        for n in 1..=9 {
            fact *= n;
            tv.push(fact);
        }
        let t = seq(Mode::Trees, "132,231,321", &tv);
        let f = seq(
            Mode::Forests,
            "132,231,321",
            &[1, 1, 3, 13, 73, 501, 4051, 37633, 394353],
        );
        let r = check_sandwich(&t, &f, Some(Classification::Covered)).unwrap();
        assert_eq!(r.lower_violations, vec![8]);
        assert!(r.upper_violations.is_empty());
        // Covered sets may violate the lower side: not an integrity breach.
        assert!(!r.integrity_breach);
    }

    #[test]
    fn uncovered_lower_violation_is_an_integrity_breach() {
        // Synthetic corrupted data for an uncovered set: t_4 = 12 < f_3 = 15.
        let t = seq(Mode::Trees, "213", &[0, 1, 2, 8, 12]);
        let f = seq(Mode::Forests, "213", &[1, 1, 3, 15, 104]);
        let r = check_sandwich(&t, &f, Some(Classification::UncoveredBoth)).unwrap();
        assert_eq!(r.lower_violations, vec![3]);
        assert!(r.upper_violations.is_empty());
        assert!(r.integrity_breach);
    }

    #[test]
    fn classification_none_never_breaches() {
        // Same kind of corruption, but with no classification supplied the
        // breach flag stays off (violations are still reported).
        let t = seq(Mode::Trees, "x", &[0, 1, 1, 1]);
        let f = seq(Mode::Forests, "x", &[1, 1, 3]);
        let r = check_sandwich(&t, &f, None).unwrap();
        assert_eq!(r.lower_violations, vec![2]); // f_2 = 3 > t_3 = 1
        assert!(!r.integrity_breach);
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let t = seq(Mode::Trees, "x", &[0, 1]);
        assert!(matches!(
            check_sandwich(&t, &t, None),
            Err(SeqError::WrongMode { .. })
        ));
    }
}
