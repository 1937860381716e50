use std::fmt;
use std::str::FromStr;

use forest_core::{Kind, Mode};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::sequence::{CountSequence, Provenance, SeqError};

/// Errors raised while parsing b-files or cache files; data errors carry
/// 1-based line numbers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BfileError {
    /// Unparseable data line.
    Line { line: usize, msg: String },
    /// Indices must increase by exactly 1.
    NonContiguous { line: usize, expected: usize, got: usize },
    /// The first index must be 0 or 1.
    BadStartIndex { line: usize, got: usize },
    /// Counts cannot be negative.
    NegativeValue { line: usize },
    /// No data lines were found.
    Empty,
    /// A cache file lacks a required header.
    MissingHeader { key: &'static str },
    /// Bad value in a cache header.
    BadHeader { line: usize, msg: String },
    /// The assembled sequence violates a sequence invariant.
    Sequence(SeqError),
}

impl fmt::Display for BfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BfileError::Line { line, msg } => write!(f, "line {}: {}", line, msg),
            BfileError::NonContiguous { line, expected, got } => {
                write!(f, "line {}: expected index {}, got {}", line, expected, got)
            }
            BfileError::BadStartIndex { line, got } => {
                write!(f, "line {}: first index must be 0 or 1, got {}", line, got)
            }
            BfileError::NegativeValue { line } => {
                write!(f, "line {}: negative count", line)
            }
            BfileError::Empty => write!(f, "no data lines"),
            BfileError::MissingHeader { key } => {
                write!(f, "cache file lacks required header '# {}:'", key)
            }
            BfileError::BadHeader { line, msg } => write!(f, "line {}: {}", line, msg),
            BfileError::Sequence(e) => write!(f, "ingested data invalid: {}", e),
        }
    }
}

impl std::error::Error for BfileError {}

/// Parses b-file text (`index value` per line, `#` comments) into a count
/// sequence.  Indices must be contiguous and start at 0 or 1; a missing
/// index 0 is filled by convention (0 for trees, 1 for forests).
pub fn parse_bfile(
    text: &str,
    mode: Mode,
    kind: Kind,
    label: &str,
) -> Result<CountSequence, BfileError> {
    let values = parse_body(text, mode)?;
    CountSequence::new(mode, kind, label.to_string(), values, Provenance::Ingested)
        .map_err(BfileError::Sequence)
}

fn parse_body(text: &str, mode: Mode) -> Result<Vec<BigInt>, BfileError> {
    let mut values: Vec<BigInt> = Vec::new();
    let mut next_index: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let (idx_tok, val_tok) = match (toks.next(), toks.next(), toks.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(BfileError::Line {
                    line,
                    msg: format!("expected 'index value', got {:?}", trimmed),
                })
            }
        };
        let idx: usize = idx_tok.parse().map_err(|e| BfileError::Line {
            line,
            msg: format!("bad index {:?}: {}", idx_tok, e),
        })?;
        let val = BigInt::from_str(val_tok).map_err(|e| BfileError::Line {
            line,
            msg: format!("bad value {:?}: {}", val_tok, e),
        })?;
        if val.is_negative() {
            return Err(BfileError::NegativeValue { line });
        }
        match next_index {
            None => {
                match idx {
                    0 => {}
                    1 => values.push(match mode {
                        // Index 0 omitted: fill by convention.
                        Mode::Trees => BigInt::zero(),
                        Mode::Forests => BigInt::one(),
                    }),
                    got => return Err(BfileError::BadStartIndex { line, got }),
                }
                values.push(val);
                next_index = Some(idx + 1);
            }
            Some(expected) => {
                if idx != expected {
                    return Err(BfileError::NonContiguous { line, expected, got: idx });
                }
                values.push(val);
                next_index = Some(expected + 1);
            }
        }
    }
    if values.is_empty() {
        return Err(BfileError::Empty);
    }
    Ok(values)
}

/// Serializes a sequence in the cache format: four header comments (set,
/// kind, mode, provenance) followed by the b-file body from index 0.
pub fn write_cache(seq: &CountSequence) -> String {
    let mut out = String::new();
    out.push_str(&format!("# set: {}\n", seq.label()));
    out.push_str(&format!("# kind: {}\n", seq.kind()));
    out.push_str(&format!("# mode: {}\n", seq.mode()));
    out.push_str(&format!("# provenance: {}\n", seq.provenance()));
    for (n, v) in seq.values().iter().enumerate() {
        out.push_str(&format!("{} {}\n", n, v));
    }
    out
}

/// Parses a cache file produced by [`write_cache`].  Headers may appear in
/// any order but must all precede the data.
pub fn parse_cache(text: &str) -> Result<CountSequence, BfileError> {
    let mut set: Option<String> = None;
    let mut kind: Option<Kind> = None;
    let mut mode: Option<Mode> = None;
    let mut provenance: Option<Provenance> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        let Some(comment) = trimmed.strip_prefix('#') else { break };
        let comment = comment.trim();
        let Some((key, value)) = comment.split_once(':') else { continue };
        let value = value.trim();
        match key.trim() {
            "set" => set = Some(value.to_string()),
            "kind" => {
                kind = Some(Kind::parse(value).map_err(|e| BfileError::BadHeader {
                    line,
                    msg: e.to_string(),
                })?)
            }
            "mode" => {
                mode = Some(Mode::parse(value).ok_or_else(|| BfileError::BadHeader {
                    line,
                    msg: format!("unknown mode {:?}", value),
                })?)
            }
            "provenance" => {
                provenance =
                    Some(Provenance::parse(value).ok_or_else(|| BfileError::BadHeader {
                        line,
                        msg: format!("unknown provenance {:?}", value),
                    })?)
            }
            _ => {} // unknown comments are ignored
        }
    }
    let set = set.ok_or(BfileError::MissingHeader { key: "set" })?;
    let kind = kind.ok_or(BfileError::MissingHeader { key: "kind" })?;
    let mode = mode.ok_or(BfileError::MissingHeader { key: "mode" })?;
    let provenance = provenance.ok_or(BfileError::MissingHeader { key: "provenance" })?;
    let values = parse_body(text, mode)?;
    let mut seq = CountSequence::new(mode, kind, set, values, provenance)
        .map_err(BfileError::Sequence)?;
    // Provenance from the header survives the round trip.
    seq = rebuild_with_provenance(seq, provenance);
    Ok(seq)
}

fn rebuild_with_provenance(seq: CountSequence, provenance: Provenance) -> CountSequence {
    CountSequence::new(
        seq.mode(),
        seq.kind(),
        seq.label().to_string(),
        seq.values().to_vec(),
        provenance,
    )
    .expect("already validated")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_zero_based_bfile() {
        let text = "# counts\n0 0\n1 1\n2 2\n3 8\n";
        let seq = parse_bfile(text, Mode::Trees, Kind::Classical, "213").unwrap();
        let want: Vec<BigInt> = [0, 1, 2, 8].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(seq.values(), &want[..]);
        assert_eq!(seq.provenance(), Provenance::Ingested);
    }

    #[test]
    fn one_based_bfile_gets_convention_fill() {
        let text = "1 1\n2 2\n3 8\n";
        let t = parse_bfile(text, Mode::Trees, Kind::Classical, "213").unwrap();
        assert_eq!(t.value(0), &BigInt::zero());
        let f = parse_bfile("1 1\n2 3\n", Mode::Forests, Kind::Classical, "213").unwrap();
        assert_eq!(f.value(0), &BigInt::one());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_gap = "0 0\n1 1\n3 8\n";
        assert_eq!(
            parse_bfile(bad_gap, Mode::Trees, Kind::Classical, "x"),
            Err(BfileError::NonContiguous { line: 3, expected: 2, got: 3 })
        );
        let bad_start = "2 2\n3 8\n";
        assert_eq!(
            parse_bfile(bad_start, Mode::Trees, Kind::Classical, "x"),
            Err(BfileError::BadStartIndex { line: 1, got: 2 })
        );
        let bad_tok = "0 0\none 1\n";
        assert!(matches!(
            parse_bfile(bad_tok, Mode::Trees, Kind::Classical, "x"),
            Err(BfileError::Line { line: 2, .. })
        ));
        let neg = "0 0\n1 1\n2 -5\n";
        assert_eq!(
            parse_bfile(neg, Mode::Trees, Kind::Classical, "x"),
            Err(BfileError::NegativeValue { line: 3 })
        );
        let crowded = "0 0 7\n";
        assert!(matches!(
            parse_bfile(crowded, Mode::Trees, Kind::Classical, "x"),
            Err(BfileError::Line { line: 1, .. })
        ));
        assert_eq!(
            parse_bfile("# only comments\n", Mode::Trees, Kind::Classical, "x"),
            Err(BfileError::Empty)
        );
    }

    #[test]
    fn ingested_data_passes_sequence_invariants() {
        // Index 1 must hold 1.
        let text = "0 0\n1 2\n";
        assert!(matches!(
            parse_bfile(text, Mode::Trees, Kind::Classical, "x"),
            Err(BfileError::Sequence(SeqError::BadIndexOne { .. }))
        ));
    }

    #[test]
    fn cache_round_trip_is_byte_identical() {
        let seq = CountSequence::new(
            Mode::Trees,
            Kind::Classical,
            "213".into(),
            [0, 1, 2, 8, 47].iter().map(|&x| BigInt::from(x)).collect(),
            Provenance::BruteForce,
        )
        .unwrap();
        let text = write_cache(&seq);
        let parsed = parse_cache(&text).unwrap();
        assert_eq!(parsed.label(), "213");
        assert_eq!(parsed.provenance(), Provenance::BruteForce);
        assert_eq!(parsed.values(), seq.values());
        assert_eq!(write_cache(&parsed), text);
    }

    #[test]
    fn cache_headers_are_required() {
        let text = "# set: 213\n# kind: classical\n# mode: trees\n0 0\n1 1\n";
        assert_eq!(
            parse_cache(text),
            Err(BfileError::MissingHeader { key: "provenance" })
        );
        let text = "0 0\n1 1\n";
        assert!(matches!(
            parse_cache(text),
            Err(BfileError::MissingHeader { .. })
        ));
    }

    #[test]
    fn oversized_entries_fail_the_cap_not_the_parser() {
        // A 40-digit value parses fine but exceeds the n = 4 forests cap
        // (5^3 = 125), so the sequence invariant rejects it.
        let text = format!("0 1\n1 1\n2 3\n3 16\n4 {}\n", "9".repeat(40));
        assert!(matches!(
            parse_bfile(&text, Mode::Forests, Kind::Classical, "x"),
            Err(BfileError::Sequence(SeqError::AboveUnrestrictedCap { index: 4, .. }))
        ));
    }
}
