use forest_core::{Kind, Mode};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::sequence::{CountSequence, Provenance, SeqError};
use crate::transform::exp_transform_values;

/// Counts trees and forests of bounded depth (number of vertices on the
/// longest root-to-leaf path), irrespective of patterns.
///
/// Base case: depth-1 trees are single vertices (`t_{1,n} = [n = 1]`).
/// Step: a depth-bounded tree is a root (n label choices) over a forest one
/// level shallower on the remaining labels, so `t_{m+1,n} = n * f_{m,n-1}`,
/// with forests recovered by the exponential transform at every level.
pub fn depth_bounded(max_depth: usize, n_max: usize) -> Result<(CountSequence, CountSequence), SeqError> {
    assert!(max_depth >= 1, "depth bound must be at least 1");
    let mut t: Vec<BigInt> = (0..=n_max)
        .map(|n| if n == 1 { BigInt::from(1) } else { BigInt::zero() })
        .collect();
    let mut f = exp_transform_values(&t);
    for _level in 2..=max_depth {
        let mut next_t = vec![BigInt::zero()];
        for n in 1..=n_max {
            next_t.push(BigInt::from(n) * &f[n - 1]);
        }
        t = next_t;
        f = exp_transform_values(&t);
    }
    let label = format!("depth<={}", max_depth);
    Ok((
        CountSequence::new(Mode::Trees, Kind::Classical, label.clone(), t, Provenance::DepthRecurrence)?,
        CountSequence::new(Mode::Forests, Kind::Classical, label, f, Provenance::DepthRecurrence)?,
    ))
}
