//! Core types for rooted labeled forests and permutation patterns.
//!
//! A rooted labeled forest on `{1, ..., n}` is stored as a parent array:
//! `parent[v] = 0` marks `v` as a root, otherwise `parent[v]` is the label of
//! the parent of `v`.  A pattern is a permutation of `{1, ..., k}`; a forest
//! *contains* a pattern when some chain of strict ancestor/descendant
//! relationships realizes it, either as a scattered subsequence (classical)
//! or as a contiguous window (consecutive) of a root-to-leaf label path.
//!
//! The crate provides containment tests, complementation, structural
//! profiles, and a pruned depth-first enumerator over all avoiding forests
//! (or trees) on small vertex sets.

mod enumerate;
mod forest;
mod matcher;
mod pattern;

pub use enumerate::{
    count_avoiding, count_avoiding_from, iter_avoiding, shard_prefixes, visit_avoiding, EnumError,
    EnumJob, ForestIter, Mode, DEFAULT_CAP,
};
pub use forest::{ForestError, ForestProfile, LabeledForest};
pub use pattern::{Classification, Kind, Pattern, PatternError, PatternSet};
