//! Exact discrete probability mass functions over integer support.

use crate::StatError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Write as _;

/// A probability mass function on integer points with exact rational
/// probabilities.  `sample_size` is `None` for exact distributions and
/// `Some(count)` when the probabilities are empirical frequencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscretePMF {
    support: Vec<u64>,
    probabilities: Vec<BigRational>,
    sample_size: Option<u64>,
}

impl DiscretePMF {
    /// Validates: equal lengths, strictly increasing support, nonnegative
    /// probabilities summing to exactly 1.
    pub fn new(
        support: Vec<u64>,
        probabilities: Vec<BigRational>,
        sample_size: Option<u64>,
    ) -> Result<DiscretePMF, StatError> {
        if support.len() != probabilities.len() || support.is_empty() {
            return Err(StatError::BadPmf(
                "support and probability lists must be nonempty and equal in length".to_string(),
            ));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(StatError::BadPmf("support must be strictly increasing".to_string()));
        }
        let mut total = BigRational::zero();
        for p in &probabilities {
            if p.is_negative() {
                return Err(StatError::BadPmf("negative probability".to_string()));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(StatError::BadPmf(format!("probabilities sum to {}, not 1", total)));
        }
        Ok(DiscretePMF { support, probabilities, sample_size })
    }

    /// Build from occurrence counts; the total must be positive.
    pub fn from_counts(
        support: Vec<u64>,
        counts: &[u64],
        sample_size: Option<u64>,
    ) -> Result<DiscretePMF, StatError> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(StatError::BadPmf("no observations".to_string()));
        }
        let probabilities = counts
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(total)))
            .collect();
        DiscretePMF::new(support, probabilities, sample_size)
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn probabilities(&self) -> &[BigRational] {
        &self.probabilities
    }

    pub fn sample_size(&self) -> Option<u64> {
        self.sample_size
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Probability of a point (zero off the support).
    pub fn prob(&self, point: u64) -> BigRational {
        match self.support.binary_search(&point) {
            Ok(i) => self.probabilities[i].clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// CSV rows `statistic,n,point,numerator,denominator,float`, one per
    /// support point, without a header.
    pub fn csv_rows(&self, statistic: &str, n: usize) -> String {
        let mut out = String::new();
        for (x, p) in self.support.iter().zip(&self.probabilities) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6}",
                statistic,
                n,
                x,
                p.numer(),
                p.denom(),
                p.to_f64().unwrap_or(f64::NAN)
            );
        }
        out
    }

    /// Header matching [`csv_rows`](Self::csv_rows).
    pub fn csv_header() -> &'static str {
        "statistic,n,point,numerator,denominator,float"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn validation_rejects_malformed_pmfs() {
        assert!(matches!(
            DiscretePMF::new(vec![1, 2], vec![rat(1, 2)], None),
            Err(StatError::BadPmf(_))
        ));
        assert!(matches!(
            DiscretePMF::new(vec![2, 1], vec![rat(1, 2), rat(1, 2)], None),
            Err(StatError::BadPmf(_))
        ));
        assert!(matches!(
            DiscretePMF::new(vec![1, 2], vec![rat(3, 2), rat(-1, 2)], None),
            Err(StatError::BadPmf(_))
        ));
        assert!(matches!(
            DiscretePMF::new(vec![1, 2], vec![rat(1, 2), rat(1, 3)], None),
            Err(StatError::BadPmf(_))
        ));
    }

    #[test]
    fn counts_normalize_to_exact_probabilities() {
        let pmf = DiscretePMF::from_counts(vec![1, 2, 3], &[2, 3, 1], None).unwrap();
        assert_eq!(pmf.prob(1), rat(1, 3));
        assert_eq!(pmf.prob(2), rat(1, 2));
        assert_eq!(pmf.prob(3), rat(1, 6));
        assert_eq!(pmf.prob(7), rat(0, 1));
        assert_eq!(pmf.sample_size(), None);
    }

    #[test]
    fn zero_probability_points_are_allowed() {
        let pmf = DiscretePMF::from_counts(vec![1, 2, 3], &[1, 0, 1], Some(2)).unwrap();
        assert_eq!(pmf.prob(2), rat(0, 1));
        assert_eq!(pmf.sample_size(), Some(2));
    }

    #[test]
    fn csv_rows_have_the_documented_shape() {
        let pmf = DiscretePMF::from_counts(vec![1, 2], &[1, 3], None).unwrap();
        let rows = pmf.csv_rows("components", 5);
        let mut lines = rows.lines();
        assert_eq!(lines.next(), Some("components,5,1,1,4,0.250000"));
        assert_eq!(lines.next(), Some("components,5,2,3,4,0.750000"));
        assert_eq!(lines.next(), None);
        assert_eq!(DiscretePMF::csv_header().split(',').count(), 6);
    }
}
