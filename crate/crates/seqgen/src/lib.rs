//! Count sequences for pattern-avoiding forests.
//!
//! The two sequences of interest for a pattern set S are
//! `t_n` (trees on `{1, ..., n}` avoiding S) and `f_n` (forests avoiding S).
//! They are linked by the exponential transform
//! `f_n = sum_k C(n-1, k-1) * t_k * f_{n-k}`, which this crate implements
//! together with its division-free inverse, brute-force generation, closed
//! forms for recognized families, a depth-bounded recurrence, b-file
//! ingestion with a cache format, and the two-sided growth inequality
//! `f_k <= t_{k+1}` and `t_k <= k * f_{k-1}`.

mod bfile;
mod bruteforce;
mod depth;
mod family;
mod sandwich;
mod sequence;
mod transform;

pub use bfile::{parse_bfile, parse_cache, write_cache, BfileError};
pub use bruteforce::count_bruteforce;
pub use depth::depth_bounded;
pub use family::{closed_form_family, recognize_family, Family, FamilyCounts};
pub use sandwich::{check_sandwich, SandwichReport};
pub use sequence::{CountSequence, Provenance, SeqError};
pub use transform::{exp_transform, exp_transform_values, log_transform, log_transform_values, ExpAccumulator, PascalRow};
