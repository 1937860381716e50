use std::fmt;

use forest_core::{EnumError, Kind, Mode};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// How a count sequence was produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    BruteForce,
    ClosedForm,
    Transform,
    Ingested,
    DepthRecurrence,
}

impl Provenance {
    /// Canonical hyphenated name (used in cache headers).
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::BruteForce => "brute-force",
            Provenance::ClosedForm => "closed-form",
            Provenance::Transform => "transform",
            Provenance::Ingested => "ingested",
            Provenance::DepthRecurrence => "depth-recurrence",
        }
    }

    /// Parses the canonical name.
    pub fn parse(text: &str) -> Option<Provenance> {
        match text.trim() {
            "brute-force" => Some(Provenance::BruteForce),
            "closed-form" => Some(Provenance::ClosedForm),
            "transform" => Some(Provenance::Transform),
            "ingested" => Some(Provenance::Ingested),
            "depth-recurrence" => Some(Provenance::DepthRecurrence),
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Errors raised by sequence construction and derivation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeqError {
    /// A sequence needs at least the index-0 entry.
    Empty,
    /// Index 0 must be 0 for trees and 1 for forests.
    BadIndexZero { mode: Mode, got: BigInt },
    /// Index 1, when present, must be 1 in both modes.
    BadIndexOne { got: BigInt },
    /// Counts cannot be negative.
    Negative { index: usize, got: BigInt },
    /// Entry exceeds the unrestricted count for its index.
    AboveUnrestrictedCap { index: usize, got: BigInt },
    /// The requested derivation needs more data than is present.
    InsufficientData { needed: usize, have: usize },
    /// Enumeration refused the request (cap exceeded).
    Enumeration(EnumError),
    /// No closed form is known for the given pattern set.
    UnsupportedFamily { set: String },
    /// Wrong sequence mode for the requested operation.
    WrongMode { expected: Mode, got: Mode },
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::Empty => write!(f, "sequence must contain at least index 0"),
            SeqError::BadIndexZero { mode, got } => {
                let want = match mode {
                    Mode::Trees => 0,
                    Mode::Forests => 1,
                };
                write!(f, "index 0 of a {} sequence must be {}, got {}", mode, want, got)
            }
            SeqError::BadIndexOne { got } => {
                write!(f, "index 1 must be 1 in both modes, got {}", got)
            }
            SeqError::Negative { index, got } => {
                write!(f, "negative count {} at index {}", got, index)
            }
            SeqError::AboveUnrestrictedCap { index, got } => write!(
                f,
                "count {} at index {} exceeds the unrestricted total",
                got, index
            ),
            SeqError::InsufficientData { needed, have } => {
                write!(f, "need data through index {}, have {}", needed, have)
            }
            SeqError::Enumeration(e) => write!(f, "enumeration refused: {}", e),
            SeqError::UnsupportedFamily { set } => {
                write!(f, "no closed form recognized for {{{}}}", set)
            }
            SeqError::WrongMode { expected, got } => {
                write!(f, "expected a {} sequence, got {}", expected, got)
            }
        }
    }
}

impl std::error::Error for SeqError {}

/// A validated count sequence: mode, containment kind, a descriptor of the
/// avoidance constraint, contiguous values from index 0, and provenance.
///
/// Construction enforces the boundary values (`t_0 = 0`, `f_0 = 1`, index 1
/// equal to 1 when present), nonnegativity, and domination by the
/// unrestricted counts `n^(n-1)` / `(n+1)^(n-1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountSequence {
    mode: Mode,
    kind: Kind,
    label: String,
    values: Vec<BigInt>,
    provenance: Provenance,
}

impl CountSequence {
    pub fn new(
        mode: Mode,
        kind: Kind,
        label: String,
        values: Vec<BigInt>,
        provenance: Provenance,
    ) -> Result<Self, SeqError> {
        if values.is_empty() {
            return Err(SeqError::Empty);
        }
        let want0 = match mode {
            Mode::Trees => BigInt::zero(),
            Mode::Forests => BigInt::one(),
        };
        if values[0] != want0 {
            return Err(SeqError::BadIndexZero { mode, got: values[0].clone() });
        }
        if values.len() > 1 && !values[1].is_one() {
            return Err(SeqError::BadIndexOne { got: values[1].clone() });
        }
        for (n, v) in values.iter().enumerate() {
            if v.is_negative() {
                return Err(SeqError::Negative { index: n, got: v.clone() });
            }
            if n >= 1 && !fits_under_cap(v, n, mode) {
                return Err(SeqError::AboveUnrestrictedCap { index: n, got: v.clone() });
            }
        }
        Ok(CountSequence { mode, kind, label, values, provenance })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Descriptor of the avoidance constraint (normalized pattern set text,
    /// or a recurrence descriptor such as `depth<=3`).
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Entry at index `n`.
    pub fn value(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    /// Largest index present.
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Same sequence truncated to indices `0..=n`.
    pub fn truncated(&self, n: usize) -> Result<CountSequence, SeqError> {
        if n > self.n_max() {
            return Err(SeqError::InsufficientData { needed: n, have: self.n_max() });
        }
        Ok(CountSequence {
            mode: self.mode,
            kind: self.kind,
            label: self.label.clone(),
            values: self.values[..=n].to_vec(),
            provenance: self.provenance,
        })
    }
}

/// True when `v` is at most the unrestricted count for index `n`:
/// `n^(n-1)` for trees, `(n+1)^(n-1)` for forests.  A cheap bit-length
/// comparison short-circuits the exact power for clearly small values.
fn fits_under_cap(v: &BigInt, n: usize, mode: Mode) -> bool {
    let base = match mode {
        Mode::Trees => n as u64,
        Mode::Forests => n as u64 + 1,
    };
    if n == 1 {
        return v.is_one(); // both caps are 1 at n = 1
    }
    // cap = base^(n-1) >= 2^floor((n-1)*log2(base)), so any value with at
    // most that many bits is under the cap.
    let cap_bits_lower = ((n as f64 - 1.0) * (base as f64).log2()).floor() as u64;
    if v.bits() <= cap_bits_lower.saturating_sub(1) {
        return true;
    }
    let cap = BigInt::from(base).pow(n as u32 - 1);
    *v <= cap
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn boundary_values_are_enforced() {
        let ok = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "213".into(),
            big(&[0, 1, 2, 8]),
            Provenance::BruteForce,
        );
        assert!(ok.is_ok());
        let bad0 = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "213".into(),
            big(&[1, 1]),
            Provenance::BruteForce,
        );
        assert!(matches!(bad0, Err(SeqError::BadIndexZero { .. })));
        let bad1 = CountSequence::new(
            Mode::Forests,
            Kind::Classical,
            "213".into(),
            big(&[1, 2]),
            Provenance::BruteForce,
        );
        assert!(matches!(bad1, Err(SeqError::BadIndexOne { .. })));
        assert!(matches!(
            CountSequence::new(
                Mode::Trees,
                Kind::Classical,
                "x".into(),
                vec![],
                Provenance::BruteForce
            ),
            Err(SeqError::Empty)
        ));
    }

    #[test]
    fn negativity_and_caps_are_enforced() {
        let neg = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "x".into(),
            big(&[0, 1, -3]),
            Provenance::BruteForce,
        );
        assert!(matches!(neg, Err(SeqError::Negative { index: 2, .. })));
        // Trees cap at n = 3 is 3^2 = 9.
        let over = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "x".into(),
            big(&[0, 1, 2, 10]),
            Provenance::BruteForce,
        );
        assert!(matches!(over, Err(SeqError::AboveUnrestrictedCap { index: 3, .. })));
        let tight = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "empty".into(),
            big(&[0, 1, 2, 9, 64]),
            Provenance::ClosedForm,
        );
        assert!(tight.is_ok());
        // Forests cap at n = 4 is 5^3 = 125.
        let tight_f = CountSequence::new(
            Mode::Forests,
            Kind::Classical,
            "empty".into(),
            big(&[1, 1, 3, 16, 125]),
            Provenance::ClosedForm,
        );
        assert!(tight_f.is_ok());
        let over_f = CountSequence::new(
            Mode::Forests,
            Kind::Classical,
            "x".into(),
            big(&[1, 1, 3, 16, 126]),
            Provenance::ClosedForm,
        );
        assert!(matches!(over_f, Err(SeqError::AboveUnrestrictedCap { index: 4, .. })));
    }

    #[test]
    fn cap_check_handles_huge_indices_quickly() {
        // 2500 entries of value 1 — the bit-length shortcut must make this
        // instantaneous rather than computing 2500 big powers.
        let mut values = vec![BigInt::zero()];
        values.extend(std::iter::repeat(BigInt::one()).take(2500));
        let seq = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "synthetic".into(),
            values,
            Provenance::Ingested,
        );
        assert!(seq.is_ok());
    }

    #[test]
    fn truncation_preserves_metadata() {
        let s = CountSequence::new(
            Mode::Forests,
            Kind::Consecutive,
            "213".into(),
            big(&[1, 1, 3, 15, 106]),
            Provenance::BruteForce,
        )
        .unwrap();
        let t = s.truncated(2).unwrap();
        assert_eq!(t.values(), &big(&[1, 1, 3])[..]);
        assert_eq!(t.kind(), Kind::Consecutive);
        assert_eq!(t.provenance(), Provenance::BruteForce);
        assert!(matches!(
            s.truncated(9),
            Err(SeqError::InsufficientData { needed: 9, have: 4 })
        ));
    }
}
