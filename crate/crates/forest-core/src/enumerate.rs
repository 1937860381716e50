//! Pruned depth-first enumeration of pattern-avoiding forests.
//!
//! Vertices are assigned parents in label order 1, 2, ..., n, trying parent
//! candidates 0, 1, ..., n at each level, so complete parent arrays appear
//! in lexicographic order.  Two prunes keep the search sound and exact:
//!
//! * acyclicity — an assignment whose parent chain returns to the new vertex
//!   is rejected outright;
//! * instance-freeness — after each assignment, every maximal ancestor chain
//!   through the new edge is checked; since a chain of a partial forest
//!   survives into every completion, any instance found now would survive
//!   too, so the branch is cut.
//!
//! Because only the new edge can create new chains, each step checks only
//! chains through that edge, and on the (common) case where the new vertex
//! has no assigned children the check narrows further to instances using the
//! chain's final element.

use std::fmt;

use crate::forest::LabeledForest;
use crate::matcher;
use crate::pattern::{Kind, PatternSet};

/// Default vertex-count cap for enumeration jobs.
pub const DEFAULT_CAP: usize = 10;

/// Whether to enumerate all forests or single-component forests only.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Trees,
    Forests,
}

impl Mode {
    /// Canonical lowercase name.
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Trees => "trees",
            Mode::Forests => "forests",
        }
    }

    /// Parses the canonical name.
    pub fn parse(text: &str) -> Option<Mode> {
        match text.trim() {
            "trees" => Some(Mode::Trees),
            "forests" => Some(Mode::Forests),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An enumeration request: vertex count, pattern set, mode, and size cap.
#[derive(Clone, Debug)]
pub struct EnumJob {
    pub n: usize,
    pub set: PatternSet,
    pub mode: Mode,
    pub cap: usize,
}

impl EnumJob {
    /// New job with the default cap.
    pub fn new(n: usize, set: PatternSet, mode: Mode) -> Self {
        EnumJob { n, set, mode, cap: DEFAULT_CAP }
    }

    /// Replaces the cap (for callers that accept longer runtimes).
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn check(&self) -> Result<(), EnumError> {
        if self.n > self.cap {
            Err(EnumError::CapExceeded { n: self.n, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// Errors raised by enumeration entry points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumError {
    /// The requested vertex count exceeds the job cap.
    CapExceeded { n: usize, cap: usize },
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::CapExceeded { n, cap } => {
                write!(f, "n = {} exceeds the enumeration cap {}", n, cap)
            }
        }
    }
}

impl std::error::Error for EnumError {}

/// Search state shared by the counting, visiting, and iterating drivers.
struct Engine {
    n: u32,
    patterns: Vec<Vec<u32>>,
    kind: Kind,
    trees_only: bool,
    /// parent[v] for v in 1..=n (index 0 unused).
    parent: Vec<u32>,
    /// children[w] lists assigned children of w; children[0] lists roots.
    children: Vec<Vec<u32>>,
    /// Scratch buffer holding the ancestor chain under inspection.
    path: Vec<u32>,
}

impl Engine {
    fn new(job: &EnumJob) -> Engine {
        let n = job.n as u32;
        Engine {
            n,
            patterns: job.set.patterns().iter().map(|p| p.values().to_vec()).collect(),
            kind: job.set.kind(),
            trees_only: job.mode == Mode::Trees,
            parent: vec![u32::MAX; job.n + 1],
            children: vec![Vec::new(); job.n + 1],
            path: Vec::with_capacity(job.n + 1),
        }
    }

    fn root_count(&self) -> usize {
        self.children[0].len()
    }

    /// Attempts to set `parent[v] = w`; on success the edge is recorded and
    /// `true` is returned, otherwise the state is unchanged.
    fn try_assign(&mut self, v: u32, w: u32) -> bool {
        if self.trees_only && w == 0 && self.root_count() >= 1 {
            return false;
        }
        if w != 0 {
            // Reject cycles: follow assigned parents upward from w.
            let mut x = w;
            loop {
                if x == v {
                    return false;
                }
                if x > v || x == 0 {
                    break;
                }
                x = self.parent[x as usize];
            }
            if !self.edge_keeps_chains_free(v, w) {
                return false;
            }
        }
        // When w = 0, v becomes a root; its downward chains were already
        // checked as they were built, so no new instance can appear.
        self.parent[v as usize] = w;
        self.children[w as usize].push(v);
        true
    }

    fn unassign(&mut self, v: u32) {
        let w = self.parent[v as usize];
        self.parent[v as usize] = u32::MAX;
        let popped = self.children[w as usize].pop();
        debug_assert_eq!(popped, Some(v));
    }

    /// Checks every maximal chain through the new edge `(w, v)` for pattern
    /// instances.  Partial chains of a partial forest survive into every
    /// completion, so finding an instance here is final.
    fn edge_keeps_chains_free(&mut self, v: u32, w: u32) -> bool {
        if self.patterns.is_empty() {
            return true;
        }
        // Ancestor chain of w among assigned vertices, top first.  A vertex
        // above v in label order has no parent yet and tops the chain.
        self.path.clear();
        let mut x = w;
        loop {
            self.path.push(x);
            if x > v {
                break;
            }
            x = self.parent[x as usize];
            if x == 0 {
                break;
            }
        }
        self.path.reverse();
        self.path.push(v);
        let boundary = self.path.len() - 1; // index of v
        if self.children[v as usize].is_empty() {
            // Chain ends at v: new instances must use the final element.
            for pat in &self.patterns {
                let hit = match self.kind {
                    Kind::Classical => matcher::contains_classical_ending_last(&self.path, pat),
                    Kind::Consecutive => {
                        matcher::contains_consecutive_crossing(&self.path, pat, boundary)
                    }
                };
                if hit {
                    return false;
                }
            }
            return true;
        }
        // v has assigned descendants: walk each chain below v to its end.
        self.descend_chains_free(v, boundary)
    }

    /// Extends `self.path` over the assigned subtree below the last pushed
    /// vertex; at each chain end, checks instances touching the new edge.
    fn descend_chains_free(&mut self, at: u32, boundary: usize) -> bool {
        let kids = std::mem::take(&mut self.children[at as usize]);
        let ok = (|| {
            if kids.is_empty() {
                for pat in &self.patterns {
                    let hit = match self.kind {
                        Kind::Classical => matcher::contains_classical(&self.path, pat),
                        Kind::Consecutive => {
                            matcher::contains_consecutive_crossing(&self.path, pat, boundary)
                        }
                    };
                    if hit {
                        return false;
                    }
                }
                return true;
            }
            for &c in &kids {
                self.path.push(c);
                let free = self.descend_chains_free(c, boundary);
                self.path.pop();
                if !free {
                    return false;
                }
            }
            true
        })();
        self.children[at as usize] = kids;
        ok
    }

    fn accept_complete(&self) -> bool {
        !self.trees_only || self.root_count() == 1
    }

    fn count_from(&mut self, v: u32) -> u64 {
        if v > self.n {
            return self.accept_complete() as u64;
        }
        let mut total = 0;
        for w in 0..=self.n {
            if self.try_assign(v, w) {
                total += self.count_from(v + 1);
                self.unassign(v);
            }
        }
        total
    }

    fn visit_from<F: FnMut(&[u32])>(&mut self, v: u32, f: &mut F) {
        if v > self.n {
            if self.accept_complete() {
                f(&self.parent[1..]);
            }
            return;
        }
        for w in 0..=self.n {
            if self.try_assign(v, w) {
                self.visit_from(v + 1, f);
                self.unassign(v);
            }
        }
    }

    /// Replays a prefix of parent assignments; returns the next level, or
    /// None if some assignment is rejected (such a prefix completes to
    /// nothing).
    fn replay(&mut self, prefix: &[u32]) -> Option<u32> {
        for (i, &w) in prefix.iter().enumerate() {
            let v = i as u32 + 1;
            if !self.try_assign(v, w) {
                for back in (1..=i as u32).rev() {
                    self.unassign(back);
                }
                return None;
            }
        }
        Some(prefix.len() as u32 + 1)
    }
}

/// Counts forests on `{1, ..., job.n}` avoiding the job's pattern set.
pub fn count_avoiding(job: &EnumJob) -> Result<u64, EnumError> {
    job.check()?;
    let mut eng = Engine::new(job);
    Ok(eng.count_from(1))
}

/// Calls `f` with the parent array of every avoiding forest, in
/// lexicographic order of parent arrays.
pub fn visit_avoiding<F: FnMut(&[u32])>(job: &EnumJob, mut f: F) -> Result<(), EnumError> {
    job.check()?;
    let mut eng = Engine::new(job);
    eng.visit_from(1, &mut f);
    Ok(())
}

/// Lazy iterator over avoiding forests in lexicographic order.
pub fn iter_avoiding(job: &EnumJob) -> Result<ForestIter, EnumError> {
    job.check()?;
    Ok(ForestIter::new(job))
}

/// All valid assignment prefixes of length `min(depth, n)`, in lexicographic
/// order.  Counting completions of every prefix and summing reproduces the
/// total count; disjoint prefixes can be processed independently.
pub fn shard_prefixes(job: &EnumJob, depth: usize) -> Result<Vec<Vec<u32>>, EnumError> {
    job.check()?;
    let depth = depth.min(job.n);
    let mut eng = Engine::new(job);
    let mut out = Vec::new();
    fn rec(eng: &mut Engine, v: u32, depth: u32, out: &mut Vec<Vec<u32>>) {
        if v > depth {
            out.push(eng.parent[1..=depth as usize].to_vec());
            return;
        }
        for w in 0..=eng.n {
            if eng.try_assign(v, w) {
                rec(eng, v + 1, depth, out);
                eng.unassign(v);
            }
        }
    }
    rec(&mut eng, 1, depth as u32, &mut out);
    Ok(out)
}

/// Counts completions of a fixed assignment prefix (entry `i` is the parent
/// of vertex `i + 1`).  Prefixes rejected by the prunes complete to nothing
/// and count 0.
pub fn count_avoiding_from(job: &EnumJob, prefix: &[u32]) -> Result<u64, EnumError> {
    job.check()?;
    if prefix.len() > job.n {
        return Ok(0);
    }
    let mut eng = Engine::new(job);
    match eng.replay(prefix) {
        Some(next) => Ok(eng.count_from(next)),
        None => Ok(0),
    }
}

/// Lazily yields avoiding forests; see [`iter_avoiding`].
pub struct ForestIter {
    eng: Engine,
    /// cand[v] = next parent candidate to try at level v.
    cand: Vec<u32>,
    /// Current level; levels 1..v-1 hold a valid partial assignment.
    v: u32,
    done: bool,
    /// Set when n = 0 and the single empty forest is still pending.
    pending_empty: bool,
}

impl ForestIter {
    fn new(job: &EnumJob) -> ForestIter {
        let eng = Engine::new(job);
        let n = job.n;
        let pending_empty = n == 0 && job.mode == Mode::Forests;
        ForestIter {
            eng,
            cand: vec![0; n + 2],
            v: 1,
            done: n == 0,
            pending_empty,
        }
    }

    fn snapshot(&self) -> LabeledForest {
        LabeledForest::new(self.eng.parent[1..].to_vec())
            .expect("enumerator invariant: assigned arrays are acyclic")
    }
}

impl Iterator for ForestIter {
    type Item = LabeledForest;

    fn next(&mut self) -> Option<LabeledForest> {
        if self.pending_empty {
            self.pending_empty = false;
            return Some(LabeledForest::empty());
        }
        if self.done {
            return None;
        }
        loop {
            if self.v > self.eng.n {
                // A complete assignment was yielded on the previous call;
                // backtrack into the last level before continuing.
                self.v -= 1;
                self.eng.unassign(self.v);
            }
            let mut w = self.cand[self.v as usize];
            let mut advanced = false;
            while w <= self.eng.n {
                if self.eng.try_assign(self.v, w) {
                    self.cand[self.v as usize] = w + 1;
                    self.v += 1;
                    advanced = true;
                    break;
                }
                w += 1;
            }
            if !advanced {
                // Candidates exhausted at this level: backtrack.
                if self.v == 1 {
                    self.done = true;
                    return None;
                }
                self.v -= 1;
                self.eng.unassign(self.v);
                continue;
            }
            if self.v > self.eng.n {
                if self.eng.accept_complete() {
                    return Some(self.snapshot());
                }
                // Rejected complete assignment: loop re-enters backtracking.
            } else {
                self.cand[self.v as usize] = 0;
            }
        }
    }
}
