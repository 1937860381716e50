//! Moment summaries of discrete pmfs.

use crate::pmf::DiscretePMF;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Exact first and second moments plus floating-point standardized shape
/// numbers.  `skewness` and `excess_kurtosis` are `None` for a point mass,
/// where the standardizing denominator vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentsReport {
    pub mean: BigRational,
    pub variance: BigRational,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

/// Computes exact central moments of the pmf and standardizes the third
/// and fourth through floating point.
pub fn moments_report(pmf: &DiscretePMF) -> MomentsReport {
    let mean: BigRational = pmf
        .support()
        .iter()
        .zip(pmf.probabilities())
        .map(|(&x, p)| p * BigRational::from(BigInt::from(x)))
        .sum();
    let mut central = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (&x, p) in pmf.support().iter().zip(pmf.probabilities()) {
        let d = BigRational::from(BigInt::from(x)) - &mean;
        let d2 = &d * &d;
        central[0] += p * &d2;
        central[1] += p * (&d2 * &d);
        central[2] += p * (&d2 * &d2);
    }
    let [variance, m3, m4] = central;
    let (skewness, excess_kurtosis) = if variance.is_zero() {
        (None, None)
    } else {
        let v = rat_f64(&variance);
        (Some(rat_f64(&m3) / v.powf(1.5)), Some(rat_f64(&m4) / (v * v) - 3.0))
    };
    MomentsReport { mean, variance, skewness, excess_kurtosis }
}

pub(crate) fn rat_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn two_point_pmf_moments_are_exact() {
        // Component counts of unrestricted forests on [2]: 1 w.p. 2/3,
        // 2 w.p. 1/3.
        let pmf = DiscretePMF::from_counts(vec![1, 2], &[2, 1], None).unwrap();
        let m = moments_report(&pmf);
        assert_eq!(m.mean, rat(4, 3));
        assert_eq!(m.variance, rat(2, 9));
        // Central moments: m3 = 2/27, m4 = 2/27; skew = m3 / var^1.5,
        // kurtosis excess = m4 / var^2 - 3.
        let skew = m.skewness.unwrap();
        assert!((skew - (2.0 / 27.0) / (2.0f64 / 9.0).powf(1.5)).abs() < 1e-12);
        let kurt = m.excess_kurtosis.unwrap();
        assert!((kurt - ((2.0 / 27.0) / (4.0 / 81.0) - 3.0)).abs() < 1e-12);
    }

    #[test]
    fn point_mass_has_no_standardized_moments() {
        let pmf = DiscretePMF::from_counts(vec![7], &[42], None).unwrap();
        let m = moments_report(&pmf);
        assert_eq!(m.mean, rat(7, 1));
        assert_eq!(m.variance, rat(0, 1));
        assert_eq!(m.skewness, None);
        assert_eq!(m.excess_kurtosis, None);
    }

    #[test]
    fn symmetric_pmf_has_zero_skew() {
        let pmf = DiscretePMF::from_counts(vec![1, 2, 3], &[1, 2, 1], None).unwrap();
        let m = moments_report(&pmf);
        assert_eq!(m.mean, rat(2, 1));
        assert_eq!(m.variance, rat(1, 2));
        assert_eq!(m.skewness, Some(0.0));
        // Fourth central moment is 1/2, so excess = 1/2 / 1/4 - 3 = -1.
        assert_eq!(m.excess_kurtosis, Some(-1.0));
    }
}
