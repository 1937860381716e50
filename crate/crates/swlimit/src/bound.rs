//! Certified lower bounds for the forest growth limit.
//!
//! Pipeline: shifted differences `a_k = t_{k+1} - f_k` -> integrated series
//! `D` -> certified dyadic point `x_star >= r` where `D(r) = 1` -> lower
//! bound `einv / x_star`, with `einv` an exact rational under-approximation
//! of `e^{-1}`.  Every rounding in the chain is downward, so the reported
//! bound is a true lower bound whenever the nonnegativity hypothesis on the
//! differences holds.

use crate::arith::{rational_to_f64, FixedArith};
use crate::root::{certified_root_upper, RootCert};
use crate::series::{a_coeffs, d_series, ArithMode, DSeries, SeriesBuilder, SeriesCoeffs};
use crate::LimitError;
use forest_core::{Classification, Kind, PatternSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use seqgen::CountSequence;

/// Largest truncation order the adaptive loop will try.
pub const MAX_AUTO_ORDER: usize = 5000;
/// Default fixed-point precision (fractional bits).
pub const DEFAULT_PRECISION: u32 = 256;
/// Default bisection tolerance (grid bits).
pub const DEFAULT_TOL_BITS: u32 = 30;

/// Parameters for a bound computation.
#[derive(Clone, Debug)]
pub struct BoundRequest {
    /// Data depth: differences `a_0..a_n` enter the series.
    pub n: usize,
    /// Truncation order for the integrated series; `None` selects it
    /// adaptively until the discarded tail is negligible at the root.
    pub m: Option<usize>,
    /// Fixed-point fractional bits.
    pub precision: u32,
    /// Bisection grid: the root is located to within `2^-tol_bits`.
    pub tol_bits: u32,
    /// Use exact rational arithmetic regardless of the order.
    pub force_exact: bool,
}

impl BoundRequest {
    pub fn new(n: usize) -> BoundRequest {
        BoundRequest {
            n,
            m: None,
            precision: DEFAULT_PRECISION,
            tol_bits: DEFAULT_TOL_BITS,
            force_exact: false,
        }
    }

    pub fn with_order(mut self, m: usize) -> BoundRequest {
        self.m = Some(m);
        self
    }

    pub fn with_tol_bits(mut self, tol_bits: u32) -> BoundRequest {
        self.tol_bits = tol_bits;
        self
    }
}

/// A computed lower bound with everything needed to audit it.
#[derive(Clone, Debug)]
pub struct LimitBound {
    pub label: String,
    pub kind: Kind,
    pub n: usize,
    pub m: usize,
    /// Fractional bits of the backend, or `None` for exact rationals.
    pub precision: Option<u32>,
    pub tol_bits: u32,
    /// Certified dyadic point with `x_star >= r_n`.
    pub x_star: BigRational,
    /// Float bracket around the series root from the final bisection step.
    pub r_bracket: (f64, f64),
    /// Exact rational lower bound for the growth limit.
    pub lower_bound: BigRational,
    pub bound_f64: f64,
    /// False when the pattern set lacks the structural guarantee backing
    /// the construction; the number is then a heuristic, not a theorem.
    pub proven: bool,
    /// True when all differences vanish and the bound equals the universal
    /// floor exactly.
    pub degenerate: bool,
    /// True when the adaptive order hit its cap before the tail became
    /// negligible; the bound is still valid, only convergence in the order
    /// is incomplete.
    pub capped_m: bool,
}

/// Exact rational `sum_{k=0}^{K} (-1)^k / k!` with `K` odd and large enough
/// that the defect against `e^{-1}` is below `2^-(precision+2)`.  An odd
/// final index makes the partial sum an under-approximation.
pub fn einv_lower(precision: u32) -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one(); // (-1)^k / k!
    let threshold = BigRational::new(BigInt::one(), BigInt::one() << (precision + 2));
    let mut k: u64 = 0;
    loop {
        sum += &term;
        let next = -&term / BigRational::from(BigInt::from(k + 1));
        let small = next.abs() < threshold;
        if small && k % 2 == 1 {
            break;
        }
        term = next;
        k += 1;
        if k > 10_000 {
            unreachable!("factorial decay must terminate the floor expansion");
        }
    }
    debug_assert!(sum < BigRational::new(BigInt::from(36788u32), BigInt::from(100_000u32)));
    sum
}

fn validate(req: &BoundRequest) -> Result<(), LimitError> {
    if req.tol_bits == 0 || req.tol_bits > 60 {
        return Err(LimitError::BadRequest(format!(
            "bisection tolerance must be between 1 and 60 bits, got {}",
            req.tol_bits
        )));
    }
    if !(64..=8192).contains(&req.precision) {
        return Err(LimitError::BadRequest(format!(
            "fixed-point precision must be between 64 and 8192 bits, got {}",
            req.precision
        )));
    }
    if req.precision < req.tol_bits {
        return Err(LimitError::BadRequest(format!(
            "precision ({} bits) must cover the bisection grid ({} bits)",
            req.precision, req.tol_bits
        )));
    }
    if let Some(m) = req.m {
        if m < 1 || m > 200_000 {
            return Err(LimitError::BadRequest(format!(
                "truncation order {} out of range (1..=200000)",
                m
            )));
        }
    }
    Ok(())
}

/// Approximate log2 of a fixed-point coefficient times `x^m`; used only to
/// decide whether the discarded tail is already negligible.
fn tail_log2(series_coeff: &num_bigint::BigUint, frac_bits: u32, x: f64, m: usize) -> f64 {
    if series_coeff.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = series_coeff.bits();
    let top = if bits > 64 {
        (series_coeff >> (bits - 64)).to_f64().unwrap_or(1.0)
    } else {
        series_coeff.to_f64().unwrap_or(1.0)
    };
    let coeff_log2 = top.log2() + bits.saturating_sub(64) as f64 - frac_bits as f64;
    coeff_log2 + m as f64 * x.log2()
}

/// Certified lower bound for the growth limit of the forest family counted
/// by `t` (trees) and `f` (forests), using data through depth `req.n`.
///
/// Sets without a pattern starting at 1 or without one starting at the
/// maximum carry the structural guarantee that makes the result a theorem;
/// for the remaining ("covered") sets the computation still runs when the
/// differences happen to be nonnegative, but the result is flagged
/// `proven: false`.
pub fn limit_lower_bound(
    set: &PatternSet,
    t: &CountSequence,
    f: &CountSequence,
    req: &BoundRequest,
) -> Result<LimitBound, LimitError> {
    validate(req)?;
    if t.kind() != f.kind() {
        return Err(LimitError::KindMismatch);
    }
    let covered = set.classify() == Classification::Covered;
    let a = a_coeffs(t, f, req.n, covered)?;
    let einv = einv_lower(req.precision);

    let degenerate = a.iter().all(|v| v.is_zero());
    if degenerate {
        // D(x) = x exactly: the series root is 1 and the bound is the
        // universal floor itself.
        let m = req.m.unwrap_or(1).max(1);
        return Ok(LimitBound {
            label: set.normalized_text(),
            kind: t.kind(),
            n: req.n,
            m,
            precision: if req.force_exact { None } else { Some(req.precision) },
            tol_bits: req.tol_bits,
            x_star: BigRational::one(),
            r_bracket: (1.0 - 2f64.powi(-(req.tol_bits as i32)), 1.0),
            lower_bound: einv.clone(),
            bound_f64: rational_to_f64(&einv),
            proven: !covered,
            degenerate: true,
            capped_m: false,
        });
    }

    let use_exact = req.force_exact || matches!(req.m, Some(m) if m <= 64);
    let (series, cert, capped): (DSeries, RootCert, bool) = if use_exact {
        let m = req.m.unwrap_or_else(|| 64.max(4 * (req.n + 1)));
        let series = d_series(&a, m, ArithMode::Exact);
        let cert = certified_root_upper(&series, req.tol_bits)?;
        (series, cert, false)
    } else if let Some(m) = req.m {
        let series = d_series(&a, m, ArithMode::Fixed { frac_bits: req.precision });
        let cert = certified_root_upper(&series, req.tol_bits)?;
        (series, cert, false)
    } else {
        // Adaptive order: grow until the last retained term at the
        // certified point is below 2^-(precision/2), or the cap is hit.
        let mut m = 64.max(4 * (req.n + 1));
        let mut builder = SeriesBuilder::new(FixedArith::new(req.precision), &a);
        loop {
            builder.extend_to(m);
            let series = DSeries {
                n: req.n,
                m,
                coeffs: SeriesCoeffs::Fixed {
                    frac_bits: req.precision,
                    mantissas: builder.d_coeffs()[..=m].to_vec(),
                },
            };
            let cert = certified_root_upper(&series, req.tol_bits)?;
            let last = &builder.d_coeffs()[m];
            let tail = tail_log2(last, req.precision, cert.x_f64(), m);
            if tail < -((req.precision / 2) as f64) {
                break (series, cert, false);
            }
            if m >= MAX_AUTO_ORDER {
                break (series, cert, true);
            }
            m = (m + 256.max(req.n)).min(MAX_AUTO_ORDER);
        }
    };

    let x_star = cert.x_star();
    let lower_bound = &einv / &x_star;
    Ok(LimitBound {
        label: set.normalized_text(),
        kind: t.kind(),
        n: req.n,
        m: series.m,
        precision: match &series.coeffs {
            SeriesCoeffs::Exact(_) => None,
            SeriesCoeffs::Fixed { frac_bits, .. } => Some(*frac_bits),
        },
        tol_bits: req.tol_bits,
        x_star,
        r_bracket: cert.bracket,
        bound_f64: rational_to_f64(&lower_bound),
        lower_bound,
        proven: !covered,
        degenerate: false,
        capped_m: capped,
    })
}
