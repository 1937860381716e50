//! Growth-envelope diagnostics.
//!
//! For forest counts `f_k`, the envelope value `f_k^{1/k} / k` tracks the
//! supermultiplicative growth of the family; it converges to the limit from
//! above as data depth grows, complementing the certified bounds that
//! approach from below.  The values here are floating-point conveniences
//! for tables and plots, not certificates.

use crate::LimitError;
use forest_core::Mode;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use seqgen::CountSequence;

#[derive(Clone, Copy, Debug)]
pub struct RatioRow {
    pub k: usize,
    /// `f_k^{1/k} / k`.
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct RatioReport {
    pub label: String,
    pub rows: Vec<RatioRow>,
    /// Indices `k` where the envelope increased over its predecessor; the
    /// envelope of genuine forest data is expected to decrease.
    pub increases: Vec<usize>,
}

/// Natural log of a positive big integer, stable for values far beyond the
/// float range.
pub(crate) fn ln_big(v: &BigInt) -> f64 {
    debug_assert!(v.is_positive());
    let mag = v.magnitude();
    let bits = mag.bits();
    if bits <= 900 {
        return mag.to_f64().expect("magnitude fits in f64 range").ln();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_f64().expect("64-bit top fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Envelope table `f_k^{1/k} / k` for `k = 1..=k_max`.
pub fn ratio_diagnostic(f: &CountSequence, k_max: usize) -> Result<RatioReport, LimitError> {
    if f.mode() != Mode::Forests {
        return Err(LimitError::ModeMismatch { expected: Mode::Forests, found: f.mode() });
    }
    if k_max == 0 || f.n_max() < k_max {
        return Err(LimitError::InsufficientData {
            needed_trees: 0,
            needed_forests: k_max.max(1),
            have_trees: 0,
            have_forests: f.n_max(),
        });
    }
    let mut rows = Vec::with_capacity(k_max);
    let mut increases = Vec::new();
    for k in 1..=k_max {
        let fk = &f.values()[k];
        if fk.is_zero() {
            return Err(LimitError::BadRequest(format!(
                "forest count at n={} is zero; the envelope is undefined there",
                k
            )));
        }
        let value = (ln_big(fk) / k as f64).exp() / k as f64;
        if rows.last().is_some_and(|prev: &RatioRow| value > prev.value + 1e-12) {
            increases.push(k);
        }
        rows.push(RatioRow { k, value });
    }
    Ok(RatioReport { label: f.label().to_string(), rows, increases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use forest_core::{Kind, PatternSet};
    use num_bigint::BigInt;
    use num_traits::One;
    use seqgen::{count_bruteforce, Provenance};

    #[test]
    fn factorial_envelope_matches_direct_float_computation() {
        // f_k = k!: value = (k!)^{1/k} / k, decreasing toward 1/e.
        let mut vals = vec![BigInt::one()];
        let mut acc = BigInt::one();
        for k in 1..=20u32 {
            acc *= BigInt::from(k);
            vals.push(acc.clone());
        }
        let f = CountSequence::new(
            Mode::Forests,
            Kind::Classical,
            "21".to_string(),
            vals,
            Provenance::ClosedForm,
        )
        .unwrap();
        let report = ratio_diagnostic(&f, 20).unwrap();
        assert_eq!(report.rows.len(), 20);
        assert!(report.increases.is_empty(), "factorial envelope must decrease");
        let mut fact_check = 1.0f64;
        for row in &report.rows {
            fact_check *= row.k as f64;
            let direct = fact_check.powf(1.0 / row.k as f64) / row.k as f64;
            assert!((row.value - direct).abs() < 1e-9, "k={}", row.k);
        }
        assert!(report.rows[0].value == 1.0);
        assert!(report.rows[19].value > 0.367879 && report.rows[19].value < 0.6);
    }

    #[test]
    fn envelope_handles_astronomic_counts() {
        // Unrestricted forests f_n = (n+1)^(n-1) at n = 3000 exceed the
        // float range, but the log path keeps the envelope finite:
        // (n+1)^{(n-1)/n} / n, close below its limit 1.
        let n: usize = 3000;
        let fk = BigInt::from(n as u64 + 1).pow(n as u32 - 1);
        let value = (ln_big(&fk) / n as f64).exp() / n as f64;
        assert!(value.is_finite());
        let direct = ((n + 1) as f64).powf((n - 1) as f64 / n as f64) / n as f64;
        assert!((value - direct).abs() < 1e-9);
        assert!(value < 1.0 && value > 0.995);
    }

    #[test]
    fn real_data_envelope_sits_above_certified_floor() {
        let set = PatternSet::parse("213", Kind::Classical).unwrap();
        let f = count_bruteforce(&set, Mode::Forests, 6, 64).unwrap();
        let report = ratio_diagnostic(&f, 6).unwrap();
        for row in &report.rows {
            assert!(row.value > 0.36787944117144233);
        }
        assert!(report.increases.is_empty());
    }

    #[test]
    fn trees_are_rejected_and_short_data_is_reported() {
        let set = PatternSet::parse("213", Kind::Classical).unwrap();
        let t = count_bruteforce(&set, Mode::Trees, 3, 64).unwrap();
        assert!(matches!(
            ratio_diagnostic(&t, 3),
            Err(LimitError::ModeMismatch { .. })
        ));
        let f = count_bruteforce(&set, Mode::Forests, 3, 64).unwrap();
        assert!(matches!(
            ratio_diagnostic(&f, 9),
            Err(LimitError::InsufficientData { .. })
        ));
    }
}
