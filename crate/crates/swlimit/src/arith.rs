//! Arithmetic backends for the certified series pipeline.
//!
//! Every quantity in the pipeline is nonnegative, and every conclusion has
//! the shape "the evaluated series is at least 1".  Under-approximating all
//! intermediate values therefore keeps conclusions sound: if the rounded
//! evaluation clears the threshold, the true value does too.  The fixed
//! backend rounds every operation toward zero; the exact backend keeps full
//! rationals and never rounds.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic over some nonnegative number representation with round-down
/// (toward zero) semantics.  Addition is exact in both backends; only
/// multiplication and division may round, and only downward.
pub trait Arith {
    type Num: Clone + PartialOrd;

    fn zero(&self) -> Self::Num;
    fn one(&self) -> Self::Num;
    fn add(&self, a: &Self::Num, b: &Self::Num) -> Self::Num;
    /// Product, rounded toward zero if the representation requires it.
    fn mul_down(&self, a: &Self::Num, b: &Self::Num) -> Self::Num;
    /// `a / d` for a small positive integer `d`, rounded toward zero.
    fn div_small_down(&self, a: &Self::Num, d: u64) -> Self::Num;
    /// Best representable value not exceeding `num / den`.
    fn ratio_down(&self, num: &BigUint, den: &BigUint) -> Self::Num;
    /// The exact dyadic value `num / 2^log2_den` (must be representable).
    fn dyadic(&self, num: u64, log2_den: u32) -> Self::Num;
    /// True when `a >= 1`.
    fn ge_one(&self, a: &Self::Num) -> bool;
    fn is_zero(&self, a: &Self::Num) -> bool;
    fn to_f64(&self, a: &Self::Num) -> f64;
    /// Exact rational view (used for reports and cross-backend checks).
    fn to_rational(&self, a: &Self::Num) -> BigRational;
}

/// Exact rational arithmetic; nothing rounds.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactArith;

impl Arith for ExactArith {
    type Num = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul_down(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn div_small_down(&self, a: &BigRational, d: u64) -> BigRational {
        a / BigRational::from(BigInt::from(d))
    }

    fn ratio_down(&self, num: &BigUint, den: &BigUint) -> BigRational {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    fn dyadic(&self, num: u64, log2_den: u32) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::one() << log2_den)
    }

    fn ge_one(&self, a: &BigRational) -> bool {
        !a.is_negative() && *a >= BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn to_f64(&self, a: &BigRational) -> f64 {
        rational_to_f64(a)
    }

    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Fixed-point arithmetic: values are `mantissa / 2^frac_bits` with
/// nonnegative mantissas; multiplication and division shift out or truncate
/// low bits, which rounds toward zero.
#[derive(Clone, Debug)]
pub struct FixedArith {
    frac_bits: u32,
    unit: BigUint,
}

impl FixedArith {
    pub fn new(frac_bits: u32) -> FixedArith {
        assert!(frac_bits >= 16, "fixed-point precision below 16 bits is useless");
        FixedArith { frac_bits, unit: BigUint::one() << frac_bits }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }
}

impl Arith for FixedArith {
    type Num = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        self.unit.clone()
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }

    fn mul_down(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) >> self.frac_bits
    }

    fn div_small_down(&self, a: &BigUint, d: u64) -> BigUint {
        a / BigUint::from(d)
    }

    fn ratio_down(&self, num: &BigUint, den: &BigUint) -> BigUint {
        (num << self.frac_bits) / den
    }

    fn dyadic(&self, num: u64, log2_den: u32) -> BigUint {
        assert!(
            log2_den <= self.frac_bits,
            "dyadic grid finer than the mantissa ({} > {} bits)",
            log2_den,
            self.frac_bits
        );
        BigUint::from(num) << (self.frac_bits - log2_den)
    }

    fn ge_one(&self, a: &BigUint) -> bool {
        *a >= self.unit
    }

    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }

    fn to_f64(&self, a: &BigUint) -> f64 {
        let bits = a.bits();
        if bits <= 900 {
            a.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(self.frac_bits as i32)
        } else {
            // Avoid f64 overflow: take the top 64 bits and rescale.
            let shift = bits - 64;
            let top = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
            top * 2f64.powi(shift as i32 - self.frac_bits as i32)
        }
    }

    fn to_rational(&self, a: &BigUint) -> BigRational {
        BigRational::new(BigInt::from(a.clone()), BigInt::from(self.unit.clone()))
    }
}

/// f64 view of an arbitrary-size rational, safe against exponent overflow.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num_bits = r.numer().magnitude().bits() as i64;
    let den_bits = r.denom().magnitude().bits() as i64;
    let scale = num_bits.max(den_bits) - 62;
    let (n, d) = if scale > 0 {
        (
            (r.numer().magnitude() >> scale as u64).to_f64().unwrap_or(0.0),
            (r.denom().magnitude() >> scale as u64).to_f64().unwrap_or(0.0),
        )
    } else {
        (
            r.numer().magnitude().to_f64().unwrap_or(0.0),
            r.denom().magnitude().to_f64().unwrap_or(0.0),
        )
    };
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    if d == 0.0 {
        return f64::NAN;
    }
    sign * n / d
}
