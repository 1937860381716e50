use std::fmt;

use crate::matcher;
use crate::pattern::{Kind, Pattern, PatternSet};

/// A rooted labeled forest on `{1, ..., n}` stored as a parent array.
///
/// Entry `v - 1` holds the parent of vertex `v`, with 0 marking a root.
/// Construction validates ranges, rejects self-loops, and rejects cycles.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledForest {
    parent: Vec<u32>,
}

/// Errors raised while constructing a forest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ForestError {
    /// `parent[v]` exceeds `n`.
    ParentOutOfRange { vertex: u32, parent: u32, n: usize },
    /// A vertex listed itself as parent.
    SelfLoop { vertex: u32 },
    /// Following parents from `vertex` returns to it.
    Cycle { vertex: u32 },
}

impl fmt::Display for ForestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestError::ParentOutOfRange { vertex, parent, n } => write!(
                f,
                "parent[{}] = {} is outside 0..={}",
                vertex, parent, n
            ),
            ForestError::SelfLoop { vertex } => write!(f, "vertex {} is its own parent", vertex),
            ForestError::Cycle { vertex } => {
                write!(f, "parent chain from vertex {} forms a cycle", vertex)
            }
        }
    }
}

impl std::error::Error for ForestError {}

/// Structural summary of a forest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ForestProfile {
    /// Number of components (= number of roots).
    pub component_count: usize,
    /// Component sizes in ascending order.
    pub component_sizes: Vec<usize>,
    /// Root labels in ascending order.
    pub root_labels: Vec<u32>,
    /// Maximum number of vertices on a root-to-leaf path (0 when empty).
    pub depth: usize,
}

impl LabeledForest {
    /// Builds a forest from a parent array, validating acyclicity.
    pub fn new(parent: Vec<u32>) -> Result<Self, ForestError> {
        let n = parent.len();
        for (i, &p) in parent.iter().enumerate() {
            let v = i as u32 + 1;
            if p as usize > n {
                return Err(ForestError::ParentOutOfRange { vertex: v, parent: p, n });
            }
            if p == v {
                return Err(ForestError::SelfLoop { vertex: v });
            }
        }
        // Cycle detection over the functional graph v -> parent[v].
        // state: 0 = unvisited, 1 = on current chain, 2 = known acyclic.
        let mut state = vec![0u8; n + 1];
        for start in 1..=n as u32 {
            if state[start as usize] != 0 {
                continue;
            }
            let mut chain = Vec::new();
            let mut x = start;
            loop {
                if x == 0 || state[x as usize] == 2 {
                    break;
                }
                if state[x as usize] == 1 {
                    return Err(ForestError::Cycle { vertex: x });
                }
                state[x as usize] = 1;
                chain.push(x);
                x = parent[x as usize - 1];
            }
            for v in chain {
                state[v as usize] = 2;
            }
        }
        Ok(LabeledForest { parent })
    }

    /// The empty forest on zero vertices.
    pub fn empty() -> Self {
        LabeledForest { parent: Vec::new() }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Parent of vertex `v` (1-based); 0 means `v` is a root.
    pub fn parent(&self, v: u32) -> u32 {
        self.parent[v as usize - 1]
    }

    /// The raw parent array (entry `v - 1` belongs to vertex `v`).
    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    /// Root labels in ascending order.
    pub fn roots(&self) -> Vec<u32> {
        (1..=self.n() as u32).filter(|&v| self.parent(v) == 0).collect()
    }

    /// Children lists indexed by vertex (index 0 lists the roots), each in
    /// ascending order.
    pub fn children_table(&self) -> Vec<Vec<u32>> {
        let mut table = vec![Vec::new(); self.n() + 1];
        for v in 1..=self.n() as u32 {
            table[self.parent(v) as usize].push(v);
        }
        table
    }

    /// The complementary forest: vertex `v` maps to `n + 1 - v`, preserving
    /// edges.  Relabels every ancestor chain by the value complement.
    pub fn complement(&self) -> LabeledForest {
        let n = self.n() as u32;
        let mut parent = vec![0u32; self.n()];
        for v in 1..=n {
            let p = self.parent(v);
            parent[(n - v) as usize] = if p == 0 { 0 } else { n + 1 - p };
        }
        LabeledForest { parent }
    }

    /// True when some ancestor chain realizes `pattern` under `kind`.
    ///
    /// Classical: some root-to-leaf label path has a scattered subsequence
    /// order-isomorphic to the pattern.  Consecutive: some contiguous window
    /// of such a path is order-isomorphic to it.
    pub fn contains(&self, pattern: &Pattern, kind: Kind) -> bool {
        if self.n() < pattern.len() {
            return false;
        }
        let table = self.children_table();
        let mut path = Vec::with_capacity(self.n());
        for &r in &table[0] {
            if self.contains_below(r, &table, &mut path, pattern, kind) {
                return true;
            }
        }
        false
    }

    fn contains_below(
        &self,
        v: u32,
        table: &[Vec<u32>],
        path: &mut Vec<u32>,
        pattern: &Pattern,
        kind: Kind,
    ) -> bool {
        path.push(v);
        let kids = &table[v as usize];
        let hit = if kids.is_empty() {
            // Leaf: test the full root-to-leaf path once.
            match kind {
                Kind::Classical => matcher::contains_classical(path, pattern.values()),
                Kind::Consecutive => matcher::contains_consecutive(path, pattern.values()),
            }
        } else {
            kids.iter()
                .any(|&c| self.contains_below(c, table, path, pattern, kind))
        };
        path.pop();
        hit
    }

    /// True when the forest contains none of the patterns in `set`.
    pub fn avoids(&self, set: &PatternSet) -> bool {
        set.patterns()
            .iter()
            .all(|p| !self.contains(p, set.kind()))
    }

    /// Computes the structural profile: component count and sizes, root
    /// labels, and depth.
    pub fn profile(&self) -> ForestProfile {
        let n = self.n();
        let roots = self.roots();
        // Root of each vertex by walking parent chains with memoization.
        let mut root_of = vec![0u32; n + 1];
        for v in 1..=n as u32 {
            let mut chain = Vec::new();
            let mut x = v;
            while x != 0 && root_of[x as usize] == 0 {
                chain.push(x);
                x = self.parent(x);
            }
            let r = if x == 0 { *chain.last().unwrap() } else { root_of[x as usize] };
            for c in chain {
                root_of[c as usize] = r;
            }
        }
        let mut size_by_root = std::collections::BTreeMap::new();
        for v in 1..=n as u32 {
            *size_by_root.entry(root_of[v as usize]).or_insert(0usize) += 1;
        }
        let mut component_sizes: Vec<usize> = size_by_root.values().copied().collect();
        component_sizes.sort_unstable();
        // Depth via iterative deepening over children lists.
        let table = self.children_table();
        let mut depth = 0usize;
        let mut stack: Vec<(u32, usize)> = roots.iter().map(|&r| (r, 1)).collect();
        while let Some((v, d)) = stack.pop() {
            depth = depth.max(d);
            for &c in &table[v as usize] {
                stack.push((c, d + 1));
            }
        }
        ForestProfile {
            component_count: roots.len(),
            component_sizes,
            root_labels: roots,
            depth,
        }
    }
}

impl fmt::Display for LabeledForest {
    /// Prints the parent array, e.g. `[3,3,5,5,0]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parent.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}
