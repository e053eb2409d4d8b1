//! Disjoint sets constrained to a fixed rooted "union tree": merges are only
//! permitted across union-tree edges, so every live set induces a connected
//! subtree and has a unique shallowest member, served by `lowest`.
//!
//! Union-by-size with path compression. The amortized bound is O(alpha)
//! rather than the strictly linear known-union-tree structure, but the
//! interface and the tree-edge restriction are identical, so the faster
//! structure could be swapped in without touching callers.

/// Plain union-find, used where no union tree is involved.
pub struct UnionFind {
    pub parent: Vec<usize>,
    pub size: Vec<usize>,
}

impl UnionFind {
    pub fn new(k: usize) -> Self {
        UnionFind {
            parent: (0..k).collect(),
            size: vec![1; k],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two were in different sets.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

const NO_PARENT: u32 = u32::MAX;

/// Element count is capped at u32 so the hot arrays stay half-width; the
/// structure sits on the innermost loops of the cut solvers. The DSU parent
/// and the set's minimum-depth member are interleaved per node, since nearly
/// every find is immediately followed by a `lowest` read at the root.
pub struct UnionTreeDsu {
    /// (dsu parent, lowest member of the set; valid at roots)
    node: Vec<(u32, u32)>,
    size: Vec<u32>,
    tree_parent: Vec<u32>,
    depth: Vec<u32>,
}

impl UnionTreeDsu {
    /// `tree_parent[x]` is x's parent in the union tree (None for the root);
    /// `depth` must be consistent with it.
    pub fn new(tree_parent: Vec<Option<usize>>, depth: Vec<usize>) -> Self {
        Self::from_half_width(
            tree_parent
                .into_iter()
                .map(|p| p.map_or(NO_PARENT, |p| p as u32))
                .collect(),
            depth.into_iter().map(|d| d as u32).collect(),
        )
    }

    /// Same as `new`, but takes the half-width arrays directly (parent
    /// sentinel u32::MAX at the root) so repeat constructions stay cheap.
    pub fn from_half_width(tree_parent: Vec<u32>, depth: Vec<u32>) -> Self {
        let k = tree_parent.len();
        assert_eq!(depth.len(), k);
        assert!(k < u32::MAX as usize);
        UnionTreeDsu {
            node: (0..k as u32).map(|i| (i, i)).collect(),
            size: vec![1; k],
            tree_parent,
            depth,
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut x = x as u32;
        while self.node[x as usize].0 != x {
            self.node[x as usize].0 = self.node[self.node[x as usize].0 as usize].0;
            x = self.node[x as usize].0;
        }
        x as usize
    }

    /// The shallowest member of x's set.
    pub fn lowest(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.node[r].1 as usize
    }

    /// Merges the sets of x and y; xy must be a union-tree edge. No-op if
    /// already merged.
    pub fn union(&mut self, x: usize, y: usize) {
        assert!(
            self.tree_parent[x] == y as u32 || self.tree_parent[y] == x as u32,
            "union across a non-tree pair ({x}, {y})"
        );
        let (mut a, mut b) = (self.find(x) as u32, self.find(y) as u32);
        if a == b {
            return;
        }
        // Both sets are connected subtrees sharing the edge xy, so one lowest
        // is an ancestor of the other; the shallower one wins.
        let (la, lb) = (self.node[a as usize].1, self.node[b as usize].1);
        let low = if self.depth[la as usize] <= self.depth[lb as usize] {
            la
        } else {
            lb
        };
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.node[b as usize].0 = a;
        self.size[a as usize] += self.size[b as usize];
        self.node[a as usize].1 = low;
    }
}
