use forest_core::Mode;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::sequence::{CountSequence, Provenance, SeqError};

/// A single row of Pascal's triangle, grown incrementally.
///
/// After `n` calls to [`PascalRow::advance`], `get(k)` returns `C(n, k)`.
/// The transforms walk rows in order, so amortized cost per new sequence
/// entry is one row update rather than a fresh binomial computation.
#[derive(Clone, Debug)]
pub struct PascalRow {
    row: Vec<BigInt>,
    n: usize,
}

impl Default for PascalRow {
    fn default() -> Self {
        Self::new()
    }
}

impl PascalRow {
    /// Row 0: the single entry `C(0, 0) = 1`.
    pub fn new() -> Self {
        PascalRow { row: vec![BigInt::one()], n: 0 }
    }

    /// Current row index `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `C(n, k)` for the current row (0 outside `0..=n`).
    pub fn get(&self, k: usize) -> &BigInt {
        &self.row[k]
    }

    /// Moves from row `n` to row `n + 1` in place.
    pub fn advance(&mut self) {
        self.row.push(BigInt::one());
        // Walk right-to-left so each entry still holds the old-row value
        // when added to its neighbor.
        for k in (1..self.row.len() - 1).rev() {
            let left = self.row[k - 1].clone();
            self.row[k] += left;
        }
        self.n += 1;
    }
}

/// Exponential transform on raw values:
/// `f_0 = 1`, `f_n = sum_{k=1..n} C(n-1, k-1) * t_k * f_{n-k}`.
pub fn exp_transform_values(t: &[BigInt]) -> Vec<BigInt> {
    let mut acc = ExpAccumulator::new();
    for tk in t {
        acc.push(tk.clone());
    }
    acc.into_forest_values()
}

/// Inverse transform on raw values (division-free): the `k = n` term of the
/// exponential identity is `t_n * f_0 = t_n`, so
/// `t_n = f_n - sum_{k=1..n-1} C(n-1, k-1) * t_k * f_{n-k}` with `t_0 = 0`.
pub fn log_transform_values(f: &[BigInt]) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = Vec::with_capacity(f.len());
    let mut row = PascalRow::new(); // row n - 1 when computing t_n
    for n in 0..f.len() {
        if n == 0 {
            t.push(BigInt::zero());
            continue;
        }
        if n >= 2 {
            row.advance();
        }
        let mut sum = BigInt::zero();
        for k in 1..n {
            sum += row.get(k - 1) * &t[k] * &f[n - k];
        }
        t.push(&f[n] - sum);
    }
    t
}

/// Incremental exponential transform: push `t_n` entries in order and read
/// back the matching `f_n` prefix at any point.  Families defined by
/// recurrences interleave their own updates with this accumulator.
#[derive(Clone, Debug)]
pub struct ExpAccumulator {
    t: Vec<BigInt>,
    f: Vec<BigInt>,
    row: PascalRow,
}

impl Default for ExpAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl ExpAccumulator {
    pub fn new() -> Self {
        ExpAccumulator { t: Vec::new(), f: Vec::new(), row: PascalRow::new() }
    }

    /// Number of entries pushed so far.
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Accepts `t_n` (where `n = self.len()`) and computes `f_n`.
    pub fn push(&mut self, t_n: BigInt) {
        let n = self.t.len();
        self.t.push(t_n);
        if n == 0 {
            self.f.push(BigInt::one());
            return;
        }
        if n >= 2 {
            self.row.advance();
        }
        debug_assert_eq!(self.row.n(), n - 1);
        let mut sum = BigInt::zero();
        for k in 1..=n {
            sum += self.row.get(k - 1) * &self.t[k] * &self.f[n - k];
        }
        self.f.push(sum);
    }

    /// Forest values `f_0..f_n` computed so far.
    pub fn forest_values(&self) -> &[BigInt] {
        &self.f
    }

    /// Tree values pushed so far.
    pub fn tree_values(&self) -> &[BigInt] {
        &self.t
    }

    pub fn into_forest_values(self) -> Vec<BigInt> {
        self.f
    }
}

/// Lifts a trees sequence to the matching forests sequence.
pub fn exp_transform(t: &CountSequence) -> Result<CountSequence, SeqError> {
    if t.mode() != Mode::Trees {
        return Err(SeqError::WrongMode { expected: Mode::Trees, got: t.mode() });
    }
    CountSequence::new(
        Mode::Forests,
        t.kind(),
        t.label().to_string(),
        exp_transform_values(t.values()),
        Provenance::Transform,
    )
}

/// Recovers the trees sequence underneath a forests sequence.  Fails with a
/// negativity error when the input is not realizable as a forest count.
pub fn log_transform(f: &CountSequence) -> Result<CountSequence, SeqError> {
    if f.mode() != Mode::Forests {
        return Err(SeqError::WrongMode { expected: Mode::Forests, got: f.mode() });
    }
    CountSequence::new(
        Mode::Trees,
        f.kind(),
        f.label().to_string(),
        log_transform_values(f.values()),
        Provenance::Transform,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use forest_core::Kind;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pascal_row_matches_multiplicative_binomials() {
        let mut row = PascalRow::new();
        for n in 0..=12u64 {
            for k in 0..=n {
                // Independent multiplicative formula.
                let mut expect = BigInt::one();
                for i in 0..k {
                    expect = expect * BigInt::from(n - i) / BigInt::from(i + 1);
                }
                assert_eq!(*row.get(k as usize), expect, "C({}, {})", n, k);
            }
            row.advance();
        }
    }

    #[test]
    fn exp_transform_unrestricted_counts() {
        // t_n = n^(n-1) must map to f_n = (n+1)^(n-1).
        let t: Vec<BigInt> = (0..=8u32)
            .map(|n| {
                if n == 0 {
                    BigInt::zero()
                } else {
                    BigInt::from(n).pow(n - 1)
                }
            })
            .collect();
        let f = exp_transform_values(&t);
        for n in 0..=8u32 {
            let expect = BigInt::from(n + 1).pow(n.saturating_sub(1));
            assert_eq!(f[n as usize], expect, "n={}", n);
        }
    }

    #[test]
    fn exp_transform_factorial_trees() {
        // t_n = n! (n >= 1) gives the forest counts for {132,231,321}.
        let mut t = vec![BigInt::zero()];
        let mut fact = BigInt::one();
        for n in 1..=8 {
            fact *= n;
            t.push(fact.clone());
        }
        let f = exp_transform_values(&t);
        assert_eq!(f, big(&[1, 1, 3, 13, 73, 501, 4051, 37633, 394353]));
    }

    #[test]
    fn log_inverts_exp() {
        let t = big(&[0, 1, 2, 8, 47, 361, 3411]);
        let f = exp_transform_values(&t);
        assert_eq!(f, big(&[1, 1, 3, 15, 104, 917, 9783]));
        assert_eq!(log_transform_values(&f), t);
    }

    #[test]
    fn exp_inverts_log() {
        let f = big(&[1, 1, 3, 14, 87, 672]);
        let t = log_transform_values(&f);
        assert_eq!(t, big(&[0, 1, 2, 7, 34, 211]));
        assert_eq!(exp_transform_values(&t), f);
    }

    #[test]
    fn accumulator_matches_batch_transform() {
        let t = big(&[0, 1, 2, 5, 17, 79, 474]);
        let batch = exp_transform_values(&t);
        let mut acc = ExpAccumulator::new();
        for (i, tk) in t.iter().enumerate() {
            acc.push(tk.clone());
            assert_eq!(acc.forest_values(), &batch[..=i]);
        }
    }

    #[test]
    fn sequence_level_transforms_set_mode_and_provenance() {
        let t = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "213".into(),
            big(&[0, 1, 2, 8, 47]),
            Provenance::BruteForce,
        )
        .unwrap();
        let f = exp_transform(&t).unwrap();
        assert_eq!(f.mode(), Mode::Forests);
        assert_eq!(f.provenance(), Provenance::Transform);
        assert_eq!(f.label(), "213");
        assert_eq!(f.values(), &big(&[1, 1, 3, 15, 104])[..]);
        let back = log_transform(&f).unwrap();
        assert_eq!(back.values(), t.values());
        assert!(matches!(
            exp_transform(&f),
            Err(SeqError::WrongMode { .. })
        ));
    }

    #[test]
    fn log_rejects_unrealizable_forest_counts() {
        // f = [1,1,3,5] passes the cap checks but t_3 = 5 - (3 + 4) < 0.
        let f = CountSequence::new(
            Mode::Forests,
            Kind::Classical,
            "synthetic".into(),
            big(&[1, 1, 3, 5]),
            Provenance::Ingested,
        )
        .unwrap();
        assert!(matches!(
            log_transform(&f),
            Err(SeqError::Negative { index: 3, .. })
        ));
    }
}
