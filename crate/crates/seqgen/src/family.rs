use forest_core::{Kind, Mode, Pattern, PatternSet};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::sequence::{CountSequence, Provenance, SeqError};
use crate::transform::ExpAccumulator;

/// Pattern-set families with a closed form or fast recurrence for their
/// count sequences.  Recognition is syntactic on the normalized set or on
/// its complement image (complementing every pattern is a bijection on
/// forests, so both sides share their sequences).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// The empty set: t_n = n^(n-1), f_n = (n+1)^(n-1).
    Unrestricted,
    /// An uncovered set containing 21 (or 12): only chains monotone in one
    /// direction survive, so t_n = (n-1)! and f_n = n!.
    Monotone,
    /// {132, 231, 321} (or complement): t_n = n!, f by transform.
    FactorialTrees,
    /// {213, 231, 312, 321} (or complement): t_{n+1} = t_n + f_n interleaved
    /// with the exponential transform.
    AdditiveQuartet,
    /// {123, 21} (or complement): t_n = 1 for n >= 1, f_n = Bell numbers.
    BellPartitions,
}

impl Family {
    /// Short descriptor for reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Unrestricted => "unrestricted",
            Family::Monotone => "monotone",
            Family::FactorialTrees => "factorial-trees",
            Family::AdditiveQuartet => "additive-quartet",
            Family::BellPartitions => "bell-partitions",
        }
    }
}

/// Both sequences of a recognized family.
#[derive(Clone, Debug)]
pub struct FamilyCounts {
    pub family: Family,
    pub trees: CountSequence,
    pub forests: CountSequence,
}

fn is_exactly(set: &PatternSet, members: &[&str]) -> bool {
    if set.len() != members.len() {
        return false;
    }
    let mut want: Vec<Pattern> = members
        .iter()
        .map(|m| Pattern::parse(m).expect("static member list"))
        .collect();
    want.sort();
    set.patterns() == want.as_slice()
}

fn matches_either_side(set: &PatternSet, members: &[&str]) -> bool {
    is_exactly(set, members) || is_exactly(&set.complement_image(), members)
}

/// Recognizes a closed-form family, if any.
pub fn recognize_family(set: &PatternSet) -> Option<Family> {
    if set.is_empty() {
        return Some(Family::Unrestricted);
    }
    if set.kind() == Kind::Classical {
        if matches_either_side(set, &["213", "231", "312", "321"]) {
            return Some(Family::AdditiveQuartet);
        }
        if matches_either_side(set, &["132", "231", "321"]) {
            return Some(Family::FactorialTrees);
        }
        if matches_either_side(set, &["123", "21"]) {
            return Some(Family::BellPartitions);
        }
    }
    // Monotone domination also survives consecutive containment: a pattern
    // with no adjacent descent is increasing and would start with 1, so in
    // an uncovered set containing 21 every other member has an adjacent
    // descent and is implied by 21 (mirror argument for 12).
    if set.classify().is_uncovered() {
        let p21 = Pattern::parse("21").expect("static");
        let p12 = Pattern::parse("12").expect("static");
        if set.patterns().contains(&p21) || set.patterns().contains(&p12) {
            return Some(Family::Monotone);
        }
    }
    None
}

/// Produces `t` and `f` through index `n_max` for a recognized family.
pub fn closed_form_family(set: &PatternSet, n_max: usize) -> Result<FamilyCounts, SeqError> {
    let family = recognize_family(set).ok_or_else(|| SeqError::UnsupportedFamily {
        set: set.normalized_text(),
    })?;
    let label = set.normalized_text();
    let kind = set.kind();
    let (t, f, t_prov, f_prov) = match family {
        Family::Unrestricted => {
            let t: Vec<BigInt> = (0..=n_max)
                .map(|n| {
                    if n == 0 {
                        BigInt::zero()
                    } else {
                        BigInt::from(n).pow(n as u32 - 1)
                    }
                })
                .collect();
            let f: Vec<BigInt> = (0..=n_max)
                .map(|n| {
                    if n == 0 {
                        BigInt::one()
                    } else {
                        BigInt::from(n + 1).pow(n as u32 - 1)
                    }
                })
                .collect();
            (t, f, Provenance::ClosedForm, Provenance::ClosedForm)
        }
        Family::Monotone => {
            // t_n = (n-1)!, f_n = n!.
            let mut t = vec![BigInt::zero()];
            let mut f = vec![BigInt::one()];
            let mut fact = BigInt::one(); // (n-1)! entering iteration n
            for n in 1..=n_max {
                t.push(fact.clone());
                fact *= n;
                f.push(fact.clone());
            }
            (t, f, Provenance::ClosedForm, Provenance::ClosedForm)
        }
        Family::FactorialTrees => {
            let mut acc = ExpAccumulator::new();
            acc.push(BigInt::zero());
            let mut fact = BigInt::one();
            for n in 1..=n_max {
                fact *= n;
                acc.push(fact.clone());
            }
            let t = acc.tree_values().to_vec();
            let f = acc.into_forest_values();
            (t, f, Provenance::ClosedForm, Provenance::Transform)
        }
        Family::AdditiveQuartet => {
            let mut acc = ExpAccumulator::new();
            acc.push(BigInt::zero());
            if n_max >= 1 {
                acc.push(BigInt::one());
            }
            for n in 2..=n_max {
                let next = &acc.tree_values()[n - 1] + &acc.forest_values()[n - 1];
                acc.push(next);
            }
            let t = acc.tree_values().to_vec();
            let f = acc.into_forest_values();
            (t, f, Provenance::ClosedForm, Provenance::Transform)
        }
        Family::BellPartitions => {
            let mut acc = ExpAccumulator::new();
            acc.push(BigInt::zero());
            for _ in 1..=n_max {
                acc.push(BigInt::one());
            }
            let t = acc.tree_values().to_vec();
            let f = acc.into_forest_values();
            (t, f, Provenance::ClosedForm, Provenance::Transform)
        }
    };
    Ok(FamilyCounts {
        family,
        trees: CountSequence::new(Mode::Trees, kind, label.clone(), t, t_prov)?,
        forests: CountSequence::new(Mode::Forests, kind, label, f, f_prov)?,
    })
}
