//! Truncated series construction for growth lower bounds.
//!
//! From tree counts `t` and forest counts `f` (exponential counting, shifted
//! so that `a_k = t_{k+1} - f_k`), build
//!
//! * `B'(x) = sum_{j<=n} (a_j / j!) x^j`, the truncated derivative series,
//! * `C = exp(B)` via the differential recurrence
//!   `(m+1) c_{m+1} = sum_{j<=min(m,n)} (a_j / j!) c_{m-j}`, `c_0 = 1`,
//! * `D = integral of C`, i.e. `d_0 = 0`, `d_{m+1} = c_m / (m+1)`.
//!
//! All coefficients are nonnegative when every `a_k >= 0`, so round-down
//! fixed-point evaluation under-approximates the series and any threshold
//! it clears is genuinely cleared.

use crate::arith::{Arith, ExactArith, FixedArith};
use crate::LimitError;
use forest_core::Mode;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use seqgen::CountSequence;

/// Which arithmetic backend to build coefficients in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithMode {
    /// Full rational arithmetic; exact but slow for large orders.
    Exact,
    /// Round-toward-zero fixed point with the given fractional bit count.
    Fixed { frac_bits: u32 },
}

/// Coefficients of a truncated power series in one of the two backends.
#[derive(Clone, Debug)]
pub enum SeriesCoeffs {
    Exact(Vec<BigRational>),
    Fixed { frac_bits: u32, mantissas: Vec<BigUint> },
}

impl SeriesCoeffs {
    pub fn len(&self) -> usize {
        match self {
            SeriesCoeffs::Exact(v) => v.len(),
            SeriesCoeffs::Fixed { mantissas, .. } => mantissas.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Exact rational view of one coefficient.
    pub fn rational(&self, idx: usize) -> BigRational {
        match self {
            SeriesCoeffs::Exact(v) => v[idx].clone(),
            SeriesCoeffs::Fixed { frac_bits, mantissas } => BigRational::new(
                BigInt::from(mantissas[idx].clone()),
                BigInt::one() << *frac_bits,
            ),
        }
    }
}

/// The integrated series `D` truncated at order `m`, tagged with the data
/// depth `n` it was built from.
#[derive(Clone, Debug)]
pub struct DSeries {
    pub n: usize,
    pub m: usize,
    pub coeffs: SeriesCoeffs,
}

/// Shifted differences `a_k = t_{k+1} - f_k` for `k = 0..=n`.
///
/// For sets with the closure property that forests embed into trees one size
/// up, every `a_k` is nonnegative; a negative value on such a set means the
/// input data is corrupt.  `covered` records whether the pattern set lacks
/// that guarantee, which turns a negative difference from a data-integrity
/// failure into an expected mathematical obstruction.
pub fn a_coeffs(
    t: &CountSequence,
    f: &CountSequence,
    n: usize,
    covered: bool,
) -> Result<Vec<BigInt>, LimitError> {
    if t.mode() != Mode::Trees {
        return Err(LimitError::ModeMismatch { expected: Mode::Trees, found: t.mode() });
    }
    if f.mode() != Mode::Forests {
        return Err(LimitError::ModeMismatch { expected: Mode::Forests, found: f.mode() });
    }
    if t.values().len() < n + 2 || f.values().len() < n + 1 {
        return Err(LimitError::InsufficientData {
            needed_trees: n + 1,
            needed_forests: n,
            have_trees: t.n_max(),
            have_forests: f.n_max(),
        });
    }
    let mut a = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let diff = &t.values()[k + 1] - &f.values()[k];
        if diff.is_negative() {
            return Err(LimitError::NegativePrefix { k, covered });
        }
        a.push(diff);
    }
    Ok(a)
}

/// Build `C` and `D` coefficients through order `m` in the given backend.
fn cd_series<A: Arith + Clone>(ar: &A, a: &[BigInt], m: usize) -> (Vec<A::Num>, Vec<A::Num>) {
    let mut builder = SeriesBuilder::new(ar.clone(), a);
    builder.extend_to(m);
    let SeriesBuilder { mut c, mut d, .. } = builder;
    c.truncate(m + 1);
    d.truncate(m + 1);
    (c, d)
}

/// Exact-rational `C` and `D` through order `m` (consistency checks need
/// both; the root finder only needs `D`).
pub fn cd_exact(a: &[BigInt], m: usize) -> (Vec<BigRational>, Vec<BigRational>) {
    cd_series(&ExactArith, a, m)
}

/// The integrated series `D` through order `m` in the requested backend.
pub fn d_series(a: &[BigInt], m: usize, mode: ArithMode) -> DSeries {
    let n = a.len().saturating_sub(1);
    let coeffs = match mode {
        ArithMode::Exact => {
            let (_, d) = cd_series(&ExactArith, a, m);
            SeriesCoeffs::Exact(d)
        }
        ArithMode::Fixed { frac_bits } => {
            let ar = FixedArith::new(frac_bits);
            let (_, d) = cd_series(&ar, a, m);
            SeriesCoeffs::Fixed { frac_bits, mantissas: d }
        }
    };
    DSeries { n, m, coeffs }
}

/// Incremental `C`/`D` construction.  The recurrence is triangular, so the
/// builder can push the truncation order upward without recomputing the
/// prefix — adaptive order growth then costs no more than a single build at
/// the final order.
pub struct SeriesBuilder<A: Arith> {
    ar: A,
    b: Vec<A::Num>,
    n: usize,
    c: Vec<A::Num>,
    d: Vec<A::Num>,
}

impl<A: Arith> SeriesBuilder<A> {
    pub fn new(ar: A, a: &[BigInt]) -> SeriesBuilder<A> {
        let n = a.len().saturating_sub(1);
        let mut b = Vec::with_capacity(a.len());
        let mut fact = BigUint::one();
        for (j, aj) in a.iter().enumerate() {
            if j > 0 {
                fact *= BigUint::from(j);
            }
            debug_assert!(!aj.is_negative());
            b.push(ar.ratio_down(aj.magnitude(), &fact));
        }
        let c = vec![ar.one()];
        let d = vec![ar.zero(), ar.one()];
        SeriesBuilder { ar, b, n, c, d }
    }

    /// Grow both series so that `d` covers orders `0..=m`.
    pub fn extend_to(&mut self, m: usize) {
        while self.c.len() <= m {
            let mm = self.c.len() - 1;
            let mut acc = self.ar.zero();
            for j in 0..=mm.min(self.n) {
                acc = self.ar.add(&acc, &self.ar.mul_down(&self.b[j], &self.c[mm - j]));
            }
            self.c.push(self.ar.div_small_down(&acc, (mm + 1) as u64));
        }
        while self.d.len() <= m {
            let mm = self.d.len();
            self.d.push(self.ar.div_small_down(&self.c[mm - 1], mm as u64));
        }
    }

    pub fn d_coeffs(&self) -> &[A::Num] {
        &self.d
    }

    pub fn arith(&self) -> &A {
        &self.ar
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{ToPrimitive, Zero};
    use seqgen::Provenance;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn seq(mode: Mode, values: &[i64]) -> CountSequence {
        CountSequence::new(
            mode,
            forest_core::Kind::Classical,
            "test".to_string(),
            values.iter().map(|&v| BigInt::from(v)).collect(),
            Provenance::ClosedForm,
        )
        .unwrap()
    }

    #[test]
    fn shifted_differences_match_hand_computation() {
        // t = (0, 1, 1, 3, 10), f = (1, 1, 2, 6): a_k = t_{k+1} - f_k.
        let t = seq(Mode::Trees, &[0, 1, 1, 3, 10]);
        let f = seq(Mode::Forests, &[1, 1, 2, 6]);
        let a = a_coeffs(&t, &f, 3, false).unwrap();
        assert_eq!(a, vec![BigInt::from(0), BigInt::from(0), BigInt::from(1), BigInt::from(4)]);
    }

    #[test]
    fn negative_difference_reports_coverage_context() {
        let t = seq(Mode::Trees, &[0, 1, 1, 2]);
        let f = seq(Mode::Forests, &[1, 1, 3]);
        match a_coeffs(&t, &f, 2, true) {
            Err(LimitError::NegativePrefix { k: 2, covered: true }) => {}
            other => panic!("expected negative prefix at k=2, got {:?}", other),
        }
        match a_coeffs(&t, &f, 2, false) {
            Err(LimitError::NegativePrefix { k: 2, covered: false }) => {}
            other => panic!("expected integrity failure at k=2, got {:?}", other),
        }
    }

    #[test]
    fn missing_data_is_reported_before_any_arithmetic() {
        let t = seq(Mode::Trees, &[0, 1, 1]);
        let f = seq(Mode::Forests, &[1, 1]);
        assert!(matches!(
            a_coeffs(&t, &f, 2, false),
            Err(LimitError::InsufficientData { .. })
        ));
        let t = seq(Mode::Trees, &[0, 1, 1]);
        let forests_as_trees = seq(Mode::Trees, &[0, 1]);
        assert!(matches!(
            a_coeffs(&t, &forests_as_trees, 1, false),
            Err(LimitError::ModeMismatch { .. })
        ));
    }

    #[test]
    fn exp_recurrence_reproduces_known_exponential() {
        // a = (0, 1): B = x^2/2, C = e^{x^2/2} whose coefficients are
        // 1, 0, 1/2, 0, 1/8, 0, 1/48, ... and D integrates them.
        let a = vec![BigInt::zero(), BigInt::one()];
        let (c, d) = cd_exact(&a, 8);
        assert_eq!(
            &c[..7],
            &[
                rat(1, 1),
                rat(0, 1),
                rat(1, 2),
                rat(0, 1),
                rat(1, 8),
                rat(0, 1),
                rat(1, 48),
            ]
        );
        assert_eq!(
            d,
            vec![
                rat(0, 1),
                rat(1, 1),
                rat(0, 1),
                rat(1, 6),
                rat(0, 1),
                rat(1, 40),
                rat(0, 1),
                rat(1, 336),
                rat(0, 1),
            ]
        );
    }

    #[test]
    fn exp_recurrence_matches_frozen_two_term_case() {
        // a = (0, 1, 5): C = exp(x^2/2 + 5 x^3/6).
        let a = vec![BigInt::zero(), BigInt::one(), BigInt::from(5)];
        let (c, d) = cd_exact(&a, 8);
        assert_eq!(
            c,
            vec![
                rat(1, 1),
                rat(0, 1),
                rat(1, 2),
                rat(5, 6),
                rat(1, 8),
                rat(5, 12),
                rat(53, 144),
                rat(5, 48),
                rat(203, 1152),
            ]
        );
        assert_eq!(
            d,
            vec![
                rat(0, 1),
                rat(1, 1),
                rat(0, 1),
                rat(1, 6),
                rat(5, 24),
                rat(1, 40),
                rat(5, 72),
                rat(53, 1008),
                rat(5, 384),
            ]
        );
    }

    #[test]
    fn fixed_backend_under_approximates_exact_coefficients() {
        let a = vec![
            BigInt::zero(),
            BigInt::zero(),
            BigInt::from(1),
            BigInt::from(8),
            BigInt::from(66),
        ];
        let (_, d_ex) = cd_exact(&a, 40);
        let d_fx = d_series(&a, 40, ArithMode::Fixed { frac_bits: 256 });
        let tol = BigRational::new(BigInt::one(), BigInt::one() << 200u32);
        for m in 0..=40 {
            let approx = d_fx.coeffs.rational(m);
            assert!(approx <= d_ex[m], "coefficient {} overshoots", m);
            assert!(&d_ex[m] - &approx < tol, "coefficient {} drifts too far", m);
        }
    }

    #[test]
    fn deeper_truncation_never_shrinks_coefficients() {
        // Same data viewed at depths 2 and 4: the deeper series dominates
        // coefficientwise in both backends.
        let a_full = vec![
            BigInt::zero(),
            BigInt::zero(),
            BigInt::from(1),
            BigInt::from(8),
            BigInt::from(66),
        ];
        let a_cut = a_full[..3].to_vec();
        let (_, shallow) = cd_exact(&a_cut, 30);
        let (_, deep) = cd_exact(&a_full, 30);
        for m in 0..=30 {
            assert!(shallow[m] <= deep[m], "order {} decreased with depth", m);
        }
        let sh_fx = d_series(&a_cut, 30, ArithMode::Fixed { frac_bits: 128 });
        let de_fx = d_series(&a_full, 30, ArithMode::Fixed { frac_bits: 128 });
        match (&sh_fx.coeffs, &de_fx.coeffs) {
            (
                SeriesCoeffs::Fixed { mantissas: s, .. },
                SeriesCoeffs::Fixed { mantissas: d, .. },
            ) => {
                for m in 0..=30 {
                    assert!(s[m] <= d[m]);
                }
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn incremental_builder_matches_one_shot_build() {
        let a = vec![BigInt::zero(), BigInt::from(2), BigInt::from(7)];
        let one_shot = d_series(&a, 25, ArithMode::Fixed { frac_bits: 96 });
        let mut builder = SeriesBuilder::new(FixedArith::new(96), &a);
        builder.extend_to(10);
        let prefix: Vec<BigUint> = builder.d_coeffs().to_vec();
        builder.extend_to(25);
        assert_eq!(builder.d_coeffs().len(), 26);
        // Growing the order never rewrites already-computed coefficients.
        assert_eq!(&builder.d_coeffs()[..prefix.len()], &prefix[..]);
        match &one_shot.coeffs {
            SeriesCoeffs::Fixed { mantissas, .. } => {
                assert_eq!(builder.d_coeffs(), &mantissas[..]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn first_integrated_coefficient_is_exactly_one() {
        // d_1 = c_0 = 1 regardless of data; the bisection endpoints
        // depend on it.
        for a in [
            vec![BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(3)],
            vec![BigInt::zero(), BigInt::zero(), BigInt::from(11)],
        ] {
            let s = d_series(&a, 4, ArithMode::Fixed { frac_bits: 64 });
            assert_eq!(s.coeffs.rational(1).to_f64().unwrap(), 1.0);
            let (_, d) = cd_exact(&a, 4);
            assert!(d[1].is_one());
        }
    }
}
