//! Certified lower bounds for the growth constants of pattern-avoiding
//! forest families.
//!
//! The exponential growth rate ("limit") of a forest family is approached
//! from below through a truncated series construction: finite tree/forest
//! count data of depth `n` yields a series whose unit-crossing radius `r_n`
//! converts into the bound `einv / r_n <= limit`, where `einv` is an exact
//! under-approximation of `e^{-1}`.  Every arithmetic step either is exact
//! or rounds toward zero, so reported bounds hold unconditionally for sets
//! with the required structural guarantee, at any truncation depth.
//!
//! Modules:
//! * [`arith`] — exact-rational and round-down fixed-point backends,
//! * [`series`] — shifted differences and the exp/integrate recurrences,
//! * [`root`] — certified dyadic bisection for the unit crossing,
//! * [`bound`] — the end-to-end bound engine,
//! * [`diagnostics`] — growth-envelope ratio tables,
//! * [`consistency`] — coefficient identities and an independent
//!   enumeration cross-check,
//! * [`family_ode`] — the depth-parameterized bound sweep for the family
//!   defined by closing trees under root insertion.

pub mod arith;
pub mod bound;
pub mod consistency;
pub mod diagnostics;
pub mod family_ode;
pub mod root;
pub mod series;

pub use arith::{rational_to_f64, Arith, ExactArith, FixedArith};
pub use bound::{
    einv_lower, limit_lower_bound, BoundRequest, LimitBound, DEFAULT_PRECISION, DEFAULT_TOL_BITS,
    MAX_AUTO_ORDER,
};
pub use consistency::{fn_consistency, script_class_check, ClassCheckReport, ConsistencyReport};
pub use diagnostics::{ratio_diagnostic, RatioReport, RatioRow};
pub use family_ode::{family_ode_limit, FamilyOdeReport};
pub use root::{certified_root_upper, RootCert};
pub use series::{a_coeffs, cd_exact, d_series, ArithMode, DSeries, SeriesBuilder, SeriesCoeffs};

use forest_core::{EnumError, Mode};
use std::fmt;

/// Errors from the bound pipeline.
#[derive(Debug)]
pub enum LimitError {
    /// A tree sequence was passed where a forest sequence was needed or
    /// vice versa.
    ModeMismatch { expected: Mode, found: Mode },
    /// Tree and forest data use different containment kinds.
    KindMismatch,
    /// The requested depth needs more data than the sequences carry.
    InsufficientData {
        needed_trees: usize,
        needed_forests: usize,
        have_trees: usize,
        have_forests: usize,
    },
    /// A shifted difference `t_{k+1} - f_k` came out negative.  On sets
    /// with the structural guarantee this means corrupt input data; on
    /// covered sets it is a genuine mathematical obstruction.
    NegativePrefix { k: usize, covered: bool },
    /// A parameter is outside its supported range.
    BadRequest(String),
    /// A reconstructed series coefficient failed the integrality check
    /// `k! * [x^k] F` whole — the internal recurrences disagree.
    NonIntegralCoefficient { k: usize },
    /// An underlying sequence operation failed.
    Sequence(seqgen::SeqError),
    /// An underlying enumeration failed.
    Enumeration(EnumError),
}

impl fmt::Display for LimitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitError::ModeMismatch { expected, found } => {
                write!(f, "expected a {} sequence, got {}", expected, found)
            }
            LimitError::KindMismatch => {
                write!(f, "tree and forest data use different containment kinds")
            }
            LimitError::InsufficientData {
                needed_trees,
                needed_forests,
                have_trees,
                have_forests,
            } => write!(
                f,
                "need trees through n={} and forests through n={}, have {} and {}",
                needed_trees, needed_forests, have_trees, have_forests
            ),
            LimitError::NegativePrefix { k, covered: true } => write!(
                f,
                "difference t_{} - f_{} is negative; the construction does not apply to this covered set",
                k + 1,
                k
            ),
            LimitError::NegativePrefix { k, covered: false } => write!(
                f,
                "data integrity failure: t_{} - f_{} is negative on a set where forests embed into trees",
                k + 1,
                k
            ),
            LimitError::BadRequest(msg) => write!(f, "{}", msg),
            LimitError::NonIntegralCoefficient { k } => {
                write!(f, "series coefficient at order {} times {}! is not an integer", k, k)
            }
            LimitError::Sequence(e) => write!(f, "sequence error: {}", e),
            LimitError::Enumeration(e) => write!(f, "enumeration refused: {}", e),
        }
    }
}

impl std::error::Error for LimitError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            LimitError::Sequence(e) => Some(e),
            LimitError::Enumeration(e) => Some(e),
            _ => None,
        }
    }
}

impl From<seqgen::SeqError> for LimitError {
    fn from(e: seqgen::SeqError) -> LimitError {
        LimitError::Sequence(e)
    }
}

impl From<EnumError> for LimitError {
    fn from(e: EnumError) -> LimitError {
        LimitError::Enumeration(e)
    }
}
