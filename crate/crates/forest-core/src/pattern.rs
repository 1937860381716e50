use std::fmt;

/// A permutation pattern: a permutation of `{1, ..., k}` with `k >= 2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Pattern {
    values: Vec<u32>,
}

/// Errors raised while constructing or parsing patterns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PatternError {
    /// Patterns must have length at least 2.
    TooShort(usize),
    /// The values are not a permutation of `{1, ..., k}`.
    NotPermutation(Vec<u32>),
    /// The textual form could not be parsed.
    Parse(String),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::TooShort(k) => {
                write!(f, "pattern length {} is below the minimum of 2", k)
            }
            PatternError::NotPermutation(v) => {
                write!(f, "values {:?} are not a permutation of 1..=k", v)
            }
            PatternError::Parse(msg) => write!(f, "cannot parse pattern: {}", msg),
        }
    }
}

impl std::error::Error for PatternError {}

impl Pattern {
    /// Builds a pattern after checking that `values` is a permutation of
    /// `{1, ..., k}` with `k >= 2`.
    pub fn new(values: Vec<u32>) -> Result<Self, PatternError> {
        let k = values.len();
        if k < 2 {
            return Err(PatternError::TooShort(k));
        }
        let mut seen = vec![false; k];
        for &v in &values {
            if v == 0 || v as usize > k || seen[v as usize - 1] {
                return Err(PatternError::NotPermutation(values.clone()));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Pattern { values })
    }

    /// Parses the compact digit form (`"213"`) or the bracketed
    /// comma-separated form (`"[10,2,1,3,4,5,6,7,8,9]"`) used for patterns
    /// of length 10 or more.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PatternError::Parse("empty pattern text".into()));
        }
        let values = if let Some(inner) = text.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| PatternError::Parse(format!("missing ']' in {:?}", text)))?;
            inner
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|e| PatternError::Parse(format!("bad entry {:?}: {}", tok, e)))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| PatternError::Parse(format!("bad digit {:?} in {:?}", c, text)))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Pattern::new(values)
    }

    /// Pattern length `k`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: patterns have length at least 2.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The one-line notation as a slice.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The complementary pattern, replacing each entry `a` by `k + 1 - a`.
    pub fn complement(&self) -> Pattern {
        let k = self.values.len() as u32;
        Pattern {
            values: self.values.iter().map(|&a| k + 1 - a).collect(),
        }
    }

    /// True when the first entry is 1.
    pub fn starts_with_one(&self) -> bool {
        self.values[0] == 1
    }

    /// True when the first entry is the maximum `k`.
    pub fn starts_with_max(&self) -> bool {
        self.values[0] as usize == self.values.len()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() <= 9 {
            for v in &self.values {
                write!(f, "{}", v)?;
            }
            Ok(())
        } else {
            write!(f, "[")?;
            for (i, v) in self.values.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", v)?;
            }
            write!(f, "]")
        }
    }
}

/// Which occurrences count as instances of a pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    /// Scattered subsequences of ancestor chains.
    Classical,
    /// Contiguous windows of root-to-leaf label paths.
    Consecutive,
}

impl Kind {
    /// Canonical lowercase name.
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Classical => "classical",
            Kind::Consecutive => "consecutive",
        }
    }

    /// Parses the canonical name.
    pub fn parse(text: &str) -> Result<Kind, PatternError> {
        match text.trim() {
            "classical" => Ok(Kind::Classical),
            "consecutive" => Ok(Kind::Consecutive),
            other => Err(PatternError::Parse(format!("unknown kind {:?}", other))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Start-letter classification of a pattern set.
///
/// A set is *covered* when it has both a pattern starting with 1 and a
/// pattern starting with its own maximum; such sets admit forests in which
/// every sufficiently deep extension is blocked, which breaks the
/// nonnegativity needed by the certified limit machinery.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Covered,
    /// No pattern starts with 1 (some pattern starts with its maximum).
    UncoveredNoOneStart,
    /// No pattern starts with its maximum (some pattern starts with 1).
    UncoveredNoMaxStart,
    /// No pattern starts with 1 and none starts with its maximum.
    UncoveredBoth,
}

impl Classification {
    /// True for every variant except `Covered`.
    pub fn is_uncovered(self) -> bool {
        !matches!(self, Classification::Covered)
    }

    /// Canonical hyphenated name.
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Covered => "covered",
            Classification::UncoveredNoOneStart => "uncovered-no-1-start",
            Classification::UncoveredNoMaxStart => "uncovered-no-max-start",
            Classification::UncoveredBoth => "uncovered-both",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite set of patterns together with the containment kind.
///
/// Patterns are kept sorted lexicographically with duplicates removed, so
/// two sets with the same members compare equal and print identically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PatternSet {
    patterns: Vec<Pattern>,
    kind: Kind,
}

impl PatternSet {
    /// Builds a set, sorting members and removing duplicates.
    pub fn new(mut patterns: Vec<Pattern>, kind: Kind) -> Self {
        patterns.sort();
        patterns.dedup();
        PatternSet { patterns, kind }
    }

    /// The empty set (every forest avoids it).
    pub fn empty(kind: Kind) -> Self {
        PatternSet {
            patterns: Vec::new(),
            kind,
        }
    }

    /// Parses a comma-separated list of patterns; `"empty"` (or `""`)
    /// denotes the empty set.  Bracketed patterns may appear in the list.
    pub fn parse(text: &str, kind: Kind) -> Result<Self, PatternError> {
        let text = text.trim();
        if text.is_empty() || text == "empty" {
            return Ok(PatternSet::empty(kind));
        }
        let mut patterns = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let (tok, tail) = if rest.starts_with('[') {
                match rest.find(']') {
                    Some(i) => {
                        let (head, tail) = rest.split_at(i + 1);
                        (head, tail.strip_prefix(',').unwrap_or(tail))
                    }
                    None => return Err(PatternError::Parse(format!("missing ']' in {:?}", rest))),
                }
            } else {
                match rest.find(',') {
                    Some(i) => (&rest[..i], &rest[i + 1..]),
                    None => (rest, ""),
                }
            };
            patterns.push(Pattern::parse(tok)?);
            rest = tail.trim_start();
        }
        Ok(PatternSet::new(patterns, kind))
    }

    /// The member patterns in sorted order.
    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// The containment kind shared by all members.
    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// True when the set has no members.
    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Number of member patterns.
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    /// The image of the set under pattern complementation.
    pub fn complement_image(&self) -> PatternSet {
        PatternSet::new(
            self.patterns.iter().map(Pattern::complement).collect(),
            self.kind,
        )
    }

    /// True when some member starts with 1.
    pub fn has_one_start(&self) -> bool {
        self.patterns.iter().any(Pattern::starts_with_one)
    }

    /// True when some member starts with its own maximum.
    pub fn has_max_start(&self) -> bool {
        self.patterns.iter().any(Pattern::starts_with_max)
    }

    /// Start-letter classification (see [`Classification`]).
    pub fn classify(&self) -> Classification {
        match (self.has_one_start(), self.has_max_start()) {
            (true, true) => Classification::Covered,
            (false, true) => Classification::UncoveredNoOneStart,
            (true, false) => Classification::UncoveredNoMaxStart,
            (false, false) => Classification::UncoveredBoth,
        }
    }

    /// Canonical text: members sorted, comma-separated; `"empty"` for the
    /// empty set.  Used for display, cache keys, and sequence labels.
    pub fn normalized_text(&self) -> String {
        if self.patterns.is_empty() {
            return "empty".into();
        }
        self.patterns
            .iter()
            .map(Pattern::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Largest member length (0 for the empty set).
    pub fn max_len(&self) -> usize {
        self.patterns.iter().map(Pattern::len).max().unwrap_or(0)
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} ({})", self.normalized_text(), self.kind)
    }
}
