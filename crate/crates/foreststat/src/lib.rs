//! Distributions of structural statistics over pattern-avoiding forests.
//!
//! For a pattern set S and a vertex count `n`, the uniform measure on the
//! avoiding forests (or trees) induces distributions of structural
//! statistics: the label of a tree's root, the number of components of a
//! forest, and the per-size component counts.  This crate computes those
//! distributions two ways:
//!
//! * **exactly**, by exhaustive enumeration — probabilities are rationals
//!   with the class size as denominator ([`root_label_dist`],
//!   [`component_count_dist`], [`component_size_profile`]);
//! * **empirically**, by uniform rejection sampling from parent arrays
//!   ([`sample_avoiding`]), reproducible from a seed.
//!
//! [`moments_report`] summarizes either kind of pmf with exact mean and
//! variance plus floating-point standardized skewness and excess kurtosis.

mod exact;
mod moments;
mod pmf;
mod sample;

pub use exact::{component_count_dist, component_size_profile, root_label_dist, SizeProfile};
pub use moments::{moments_report, MomentsReport};
pub use pmf::DiscretePMF;
pub use sample::{sample_avoiding, sample_statistics, SampleJob, SampleReport, DEFAULT_RATE_FLOOR};

use forest_core::EnumError;
use std::fmt;

/// Errors from distribution construction and sampling.
#[derive(Debug)]
pub enum StatError {
    /// A probability mass function failed validation.
    BadPmf(String),
    /// The underlying enumeration refused or failed.
    Enumeration(EnumError),
    /// No object of the requested shape avoids the set, so the uniform
    /// measure does not exist.
    EmptyClass { n: usize, label: String },
    /// The observed acceptance rate dropped below the configured floor;
    /// the rejection sampler gave up rather than spin.
    AcceptanceRate { attempts: u64, accepted: u64, floor: f64 },
    /// A request parameter is outside its supported range.
    BadRequest(String),
}

impl fmt::Display for StatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatError::BadPmf(msg) => write!(f, "invalid pmf: {}", msg),
            StatError::Enumeration(e) => write!(f, "enumeration failed: {}", e),
            StatError::EmptyClass { n, label } => {
                write!(f, "no avoiding object on {} vertices for {{{}}}", n, label)
            }
            StatError::AcceptanceRate { attempts, accepted, floor } => write!(
                f,
                "acceptance rate {}/{} fell below the floor {:e}; \
                 the avoiding class is too sparse for rejection sampling",
                accepted, attempts, floor
            ),
            StatError::BadRequest(msg) => write!(f, "bad request: {}", msg),
        }
    }
}

impl std::error::Error for StatError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            StatError::Enumeration(e) => Some(e),
            _ => None,
        }
    }
}

impl From<EnumError> for StatError {
    fn from(e: EnumError) -> StatError {
        StatError::Enumeration(e)
    }
}
