use forest_core::{count_avoiding, EnumError, EnumJob, Mode, PatternSet};
use num_bigint::BigInt;

use crate::sequence::{CountSequence, Provenance, SeqError};

/// Counts avoiders by exhaustive pruned enumeration for every `n <= n_max`.
///
/// `cap` bounds the largest admissible `n` (the default enumeration cap is
/// deliberately small; raising it is an explicit opt-in because cost grows
/// super-exponentially).
pub fn count_bruteforce(
    set: &PatternSet,
    mode: Mode,
    n_max: usize,
    cap: usize,
) -> Result<CountSequence, SeqError> {
    if n_max > cap {
        // Fail before burning time on the reachable prefix.
        return Err(SeqError::Enumeration(EnumError::CapExceeded { n: n_max, cap }));
    }
    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let job = EnumJob::new(n, set.clone(), mode).with_cap(cap);
        let c = count_avoiding(&job).map_err(SeqError::Enumeration)?;
        values.push(BigInt::from(c));
    }
    CountSequence::new(
        mode,
        set.kind(),
        set.normalized_text(),
        values,
        Provenance::BruteForce,
    )
}
