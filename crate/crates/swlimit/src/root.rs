//! Certified upper bound for the radius at which the integrated series
//! reaches 1.
//!
//! The series `D` has nonnegative coefficients with `d_0 = 0` and `d_1 = 1`,
//! so `D` is strictly increasing on `[0, 1]`, `D(0) = 0 < 1`, and
//! `D(1) >= d_1 = 1`.  Bisection on the dyadic grid `k / 2^tol_bits`
//! therefore brackets the crossing point `r`.  Every evaluation rounds
//! toward zero, so a grid point whose rounded value clears 1 genuinely
//! satisfies `D(x) >= 1`, which certifies `x >= r`: the returned point is a
//! true upper bound for `r` no matter how the rounding fell.

use crate::arith::{Arith, ExactArith, FixedArith};
use crate::series::{DSeries, SeriesCoeffs};
use crate::LimitError;
use num_rational::BigRational;
use num_traits::Zero;

/// A certified dyadic upper bound `x_num / 2^x_log2_den >= r`, together with
/// the float bracket from the final bisection step.
#[derive(Clone, Debug)]
pub struct RootCert {
    pub x_num: u64,
    pub x_log2_den: u32,
    /// `(lo, hi)` floats: the crossing point lies in `(lo, hi]`.
    pub bracket: (f64, f64),
    /// True when the series is exactly `D(x) = x` (all data differences
    /// zero), so the crossing point is exactly 1.
    pub degenerate: bool,
}

impl RootCert {
    /// The certified point as an exact rational.
    pub fn x_star(&self) -> BigRational {
        ExactArith.dyadic(self.x_num, self.x_log2_den)
    }

    pub fn x_f64(&self) -> f64 {
        self.x_num as f64 / 2f64.powi(self.x_log2_den as i32)
    }
}

/// Round-down Horner evaluation at the dyadic point `num / 2^log2_den`.
fn eval_down<A: Arith>(ar: &A, coeffs: &[A::Num], num: u64, log2_den: u32) -> A::Num {
    let x = ar.dyadic(num, log2_den);
    let mut acc = ar.zero();
    for c in coeffs.iter().rev() {
        acc = ar.add(&ar.mul_down(&acc, &x), c);
    }
    acc
}

fn bisect<A: Arith>(ar: &A, coeffs: &[A::Num], tol_bits: u32) -> (u64, u64) {
    let mut lo = 0u64; // D(lo) < 1
    let mut hi = 1u64 << tol_bits; // D(hi) >= 1
    debug_assert!(ar.ge_one(&eval_down(ar, coeffs, hi, tol_bits)));
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ar.ge_one(&eval_down(ar, coeffs, mid, tol_bits)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Bisect the integrated series down to a `2^-tol_bits` grid and return the
/// first grid point at which the rounded evaluation reaches 1.
pub fn certified_root_upper(series: &DSeries, tol_bits: u32) -> Result<RootCert, LimitError> {
    if tol_bits == 0 || tol_bits > 60 {
        return Err(LimitError::BadRequest(format!(
            "bisection tolerance must be between 1 and 60 bits, got {}",
            tol_bits
        )));
    }
    if series.coeffs.len() < 2 {
        return Err(LimitError::BadRequest(
            "integrated series must carry at least orders 0 and 1".to_string(),
        ));
    }
    let degenerate =
        (0..series.coeffs.len()).all(|m| m == 1 || series.coeffs.rational(m).is_zero());
    let (lo, hi) = match &series.coeffs {
        SeriesCoeffs::Exact(d) => bisect(&ExactArith, d, tol_bits),
        SeriesCoeffs::Fixed { frac_bits, mantissas } => {
            if tol_bits > *frac_bits {
                return Err(LimitError::BadRequest(format!(
                    "bisection grid ({} bits) finer than the mantissa ({} bits)",
                    tol_bits, frac_bits
                )));
            }
            bisect(&FixedArith::new(*frac_bits), mantissas, tol_bits)
        }
    };
    let scale = 2f64.powi(tol_bits as i32);
    Ok(RootCert {
        x_num: hi,
        x_log2_den: tol_bits,
        bracket: (lo as f64 / scale, hi as f64 / scale),
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{d_series, ArithMode};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    #[test]
    fn linear_series_crosses_exactly_at_one() {
        // a = 0 gives D(x) = x, crossing 1 at x = 1.
        let a = vec![BigInt::zero(), BigInt::zero()];
        for mode in [ArithMode::Exact, ArithMode::Fixed { frac_bits: 64 }] {
            let d = d_series(&a, 16, mode);
            let cert = certified_root_upper(&d, 20).unwrap();
            assert!(cert.degenerate);
            assert_eq!(cert.x_num, 1 << 20);
            assert_eq!(cert.x_f64(), 1.0);
            assert!(cert.bracket.0 < 1.0);
        }
    }

    #[test]
    fn certified_point_always_clears_threshold_exactly() {
        // Whatever the rounding did, the exact evaluation at the returned
        // point must reach 1; the lower bracket endpoint must not.
        let a = vec![BigInt::zero(), BigInt::from(1), BigInt::from(4), BigInt::from(20)];
        let d = d_series(&a, 48, ArithMode::Fixed { frac_bits: 128 });
        let cert = certified_root_upper(&d, 24).unwrap();
        let d_exact = d_series(&a, 48, ArithMode::Exact);
        let coeffs = match d_exact.coeffs {
            crate::series::SeriesCoeffs::Exact(v) => v,
            _ => unreachable!(),
        };
        let at = |num: u64| -> BigRational {
            let x = ExactArith.dyadic(num, 24);
            let mut acc = BigRational::zero();
            for c in coeffs.iter().rev() {
                acc = acc * &x + c;
            }
            acc
        };
        assert!(at(cert.x_num) >= BigRational::one());
        assert!(at(cert.x_num - 1) < BigRational::one());
        assert!(!cert.degenerate);
    }

    #[test]
    fn exponential_series_root_matches_quadrature_oracle() {
        // a = (0, 1): D(x) = integral_0^x e^{t^2/2} dt.  Solve D(r) = 1 by
        // Simpson quadrature plus a float bisection, independently of the
        // series machinery, and compare.
        let quad = |x: f64| -> f64 {
            let steps = 4000;
            let h = x / steps as f64;
            let g = |t: f64| (t * t / 2.0).exp();
            let mut s = g(0.0) + g(x);
            for i in 1..steps {
                let t = i as f64 * h;
                s += if i % 2 == 1 { 4.0 * g(t) } else { 2.0 * g(t) };
            }
            s * h / 3.0
        };
        let (mut lo, mut hi) = (0.5f64, 1.0f64);
        for _ in 0..60 {
            let mid = (lo + hi) / 2.0;
            if quad(mid) >= 1.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let reference = hi;
        assert!((reference - 0.874496711541295).abs() < 1e-9);

        let a = vec![BigInt::zero(), BigInt::one()];
        let d = d_series(&a, 64, ArithMode::Fixed { frac_bits: 128 });
        let cert = certified_root_upper(&d, 40).unwrap();
        assert!(cert.x_f64() >= reference - 1e-9);
        assert!(cert.x_f64() <= reference + 2e-12 + 2f64.powi(-40));
    }

    #[test]
    fn grid_refinement_tightens_from_above() {
        let a = vec![BigInt::zero(), BigInt::one(), BigInt::from(2)];
        let d = d_series(&a, 48, ArithMode::Fixed { frac_bits: 128 });
        let mut last = f64::INFINITY;
        for tol in [8, 12, 16, 24, 32] {
            let cert = certified_root_upper(&d, tol).unwrap();
            let x = cert.x_f64();
            assert!(x <= last + 1e-15, "coarser grid should not be tighter");
            last = x;
        }
    }

    #[test]
    fn out_of_range_tolerances_are_rejected() {
        let a = vec![BigInt::zero(), BigInt::one()];
        let d = d_series(&a, 8, ArithMode::Fixed { frac_bits: 64 });
        assert!(matches!(certified_root_upper(&d, 0), Err(LimitError::BadRequest(_))));
        assert!(matches!(certified_root_upper(&d, 61), Err(LimitError::BadRequest(_))));
        assert!(matches!(certified_root_upper(&d, 65), Err(LimitError::BadRequest(_))));
    }
}
