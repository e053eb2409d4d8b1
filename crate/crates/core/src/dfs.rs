//! Rooted DFS structure: pre/post orders, edge classification and
//! orientation, subtree sizes, LCA, and the generalized low tables
//! (low1..3, maxup1..2, mindn1..2, maxdn1..2) that drive both cut solvers.

use crate::error::Error;
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::pathtopk::{prepare_tree, top_k_min_paths_prepared, RootedTree, WeightedPath};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Tree,
    Back,
}

/// Absent-parent sentinel at the root (vertex counts are capped at u32).
pub const NO_VERTEX: u32 = u32::MAX;

/// All per-vertex and per-edge arrays are half-width: the structure is
/// rebuilt per contraction level and read in every hot loop, so its memory
/// footprint is what the million-edge scaling lives or dies on.
#[derive(Debug, Clone)]
pub struct DfsStructure {
    pub root: VertexId,
    /// `NO_VERTEX` at the root.
    pub parent: Vec<u32>,
    /// `NO_EDGE` at the root.
    pub parent_edge: Vec<u32>,
    /// pre/post orders drawn from one counter in 1..=2n; ancestorship is the
    /// usual bracketing test.
    pub pre: Vec<u32>,
    pub post: Vec<u32>,
    pub depth: Vec<u32>,
    pub kind: Vec<EdgeKind>,
    /// Tree edges point away from the root, back edges toward it.
    pub tail: Vec<u32>,
    pub head: Vec<u32>,
    /// Vertices in preorder; `order[0] == root`.
    pub order: Vec<u32>,
    pub subtree_size: Vec<u32>,
}

impl DfsStructure {
    /// `u` is a (weak) ancestor of `v`.
    #[inline]
    pub fn is_ancestor(&self, u: VertexId, v: VertexId) -> bool {
        self.pre[u] <= self.pre[v] && self.post[v] <= self.post[u]
    }

    /// `x` lies in the subtree hanging below tree edge `e`.
    #[inline]
    pub fn in_subtree_of_edge(&self, e: EdgeId, x: VertexId) -> bool {
        debug_assert_eq!(self.kind[e], EdgeKind::Tree);
        self.is_ancestor(self.head[e] as usize, x)
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.kind[e] == EdgeKind::Tree
    }

    /// Back edges in increasing edge-id order.
    pub fn back_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.kind.len()).filter(move |&e| self.kind[e] == EdgeKind::Back)
    }

    #[inline]
    pub fn parent_of(&self, v: VertexId) -> Option<VertexId> {
        (self.parent[v] != NO_VERTEX).then(|| self.parent[v] as usize)
    }

    /// The parent tree edge of a non-root vertex; tree edges are identified by
    /// their deeper endpoint throughout the cut machinery.
    #[inline]
    pub fn tree_edge_above(&self, v: VertexId) -> EdgeId {
        debug_assert_ne!(self.parent_edge[v], NO_EDGE, "root has no tree edge above");
        self.parent_edge[v] as usize
    }
}

/// `back` leaps over tree edge `tree`: its tail is below `tree`, its head is not.
pub fn leaps_over(dfs: &DfsStructure, back: EdgeId, tree: EdgeId) -> bool {
    assert_eq!(dfs.kind[back], EdgeKind::Back, "first edge must be a back edge");
    assert_eq!(dfs.kind[tree], EdgeKind::Tree, "second edge must be a tree edge");
    let below = dfs.head[tree] as usize;
    dfs.is_ancestor(below, dfs.tail[back] as usize)
        && !dfs.is_ancestor(below, dfs.head[back] as usize)
}

/// Iterative DFS from `root`. Adjacency is walked in file order, which pins
/// the tree for reproducibility. Fails on disconnected input.
pub fn build_dfs(g: &Multigraph, root: VertexId) -> Result<DfsStructure> {
    let n = g.vertex_count();
    let m = g.edge_count();
    assert!(root < n);
    debug_assert!((0..m).all(|e| !g.is_self_loop(e)), "input must be loop-free");

    let mut parent = vec![NO_VERTEX; n];
    let mut parent_edge = vec![NO_EDGE; n];
    let mut pre = vec![0u32; n];
    let mut post = vec![0u32; n];
    let mut depth = vec![0u32; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut visited = vec![false; n];

    // (vertex, next adjacency index)
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    let mut clock = 0u32;

    visited[root] = true;
    clock += 1;
    pre[root] = clock;
    order.push(root as u32);
    stack.push((root, 0));

    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if let Some(&(w, e)) = g.adj(v).get(*idx) {
            *idx += 1;
            let w = w as usize;
            if parent_edge[v] == e {
                continue;
            }
            if !visited[w] {
                visited[w] = true;
                parent[w] = v as u32;
                parent_edge[w] = e;
                depth[w] = depth[v] + 1;
                clock += 1;
                pre[w] = clock;
                order.push(w as u32);
                stack.push((w, 0));
            }
        } else {
            clock += 1;
            post[v] = clock;
            stack.pop();
        }
    }

    if order.len() != n {
        return Err(Error::Disconnected);
    }

    let mut kind = vec![EdgeKind::Back; m];
    let mut tail = vec![0u32; m];
    let mut head = vec![0u32; m];
    for e in 0..m {
        let (u, v) = g.endpoints(e);
        if parent_edge[v] == e as u32 {
            kind[e] = EdgeKind::Tree;
            tail[e] = u as u32;
            head[e] = v as u32;
        } else if parent_edge[u] == e as u32 {
            kind[e] = EdgeKind::Tree;
            tail[e] = v as u32;
            head[e] = u as u32;
        } else {
            // back edge: deeper endpoint is the tail
            let (t, h) = if pre[u] > pre[v] { (u, v) } else { (v, u) };
            tail[e] = t as u32;
            head[e] = h as u32;
            debug_assert!(pre[h] <= pre[t] && post[t] <= post[h]);
        }
    }

    let mut subtree_size = vec![1u32; n];
    for &v in order.iter().rev() {
        let p = parent[v as usize];
        if p != NO_VERTEX {
            subtree_size[p as usize] += subtree_size[v as usize];
        }
    }

    Ok(DfsStructure {
        root,
        parent,
        parent_edge,
        pre,
        post,
        depth,
        kind,
        tail,
        head,
        order,
        subtree_size,
    })
}

/// DFS from vertex 0 fused with a rename of every vertex to its preorder
/// position (edge ids stay put). The traversal itself records only parent
/// pointers — the one genuinely random-access pass over the input — and all
/// remaining structure is reconstructed with sequential sweeps in the renamed
/// domain, where a vertex's subtree is the contiguous range starting at it.
/// Equivalent to `build_dfs` + `relabel_by_preorder`, but much cheaper at the
/// million-edge scale.
pub fn build_dfs_relabeled(g: &Multigraph) -> Result<(Multigraph, DfsStructure)> {
    let n = g.vertex_count();
    let m = g.edge_count();
    assert!(n >= 1);
    debug_assert!((0..m).all(|e| !g.is_self_loop(e)), "input must be loop-free");

    // lean traversal: (parent, parent edge) interleaved so each fresh vertex
    // costs one cache line, visited as a bitset
    let mut pp = vec![(NO_VERTEX, NO_EDGE); n];
    let mut seen = vec![0u64; n.div_ceil(64)];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut stack: Vec<(u32, u32)> = Vec::with_capacity(64);
    seen[0] |= 1;
    order.push(0);
    stack.push((0, 0));
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        let vu = v as usize;
        if let Some(&(w, e)) = g.adj(vu).get(*idx as usize) {
            *idx += 1;
            if pp[vu].1 == e {
                continue;
            }
            let wu = w as usize;
            if seen[wu / 64] >> (wu % 64) & 1 == 0 {
                seen[wu / 64] |= 1 << (wu % 64);
                pp[wu] = (v, e);
                order.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    if order.len() != n {
        return Err(Error::Disconnected);
    }

    let mut perm = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v as usize] = i as u32;
    }
    let rg = g.relabel(&perm);

    // parent pointers in the renamed domain; parent(v) < v always holds
    let mut parent = vec![NO_VERTEX; n];
    let mut parent_edge = vec![NO_EDGE; n];
    for i in 1..n {
        let (p, e) = pp[order[i] as usize];
        parent[i] = perm[p as usize];
        parent_edge[i] = e;
        debug_assert!(parent[i] < i as u32);
    }

    let mut depth = vec![0u32; n];
    for v in 1..n {
        depth[v] = depth[parent[v] as usize] + 1;
    }
    let mut subtree_size = vec![1u32; n];
    for v in (1..n).rev() {
        subtree_size[parent[v] as usize] += subtree_size[v];
    }

    // replay push/pop events to draw pre/post from one counter in 1..=2n:
    // moving from v to v+1 first closes every open vertex down to v+1's parent
    let mut pre = vec![0u32; n];
    let mut post = vec![0u32; n];
    let mut open: Vec<u32> = Vec::with_capacity(64);
    let mut clock = 1u32;
    pre[0] = clock;
    open.push(0);
    for v in 1..n as u32 {
        while *open.last().unwrap() != parent[v as usize] {
            let x = open.pop().unwrap();
            clock += 1;
            post[x as usize] = clock;
        }
        clock += 1;
        pre[v as usize] = clock;
        open.push(v);
    }
    while let Some(x) = open.pop() {
        clock += 1;
        post[x as usize] = clock;
    }

    let mut kind = vec![EdgeKind::Back; m];
    let mut tail = vec![0u32; m];
    let mut head = vec![0u32; m];
    for e in 0..m {
        let (u, v) = rg.endpoints(e);
        if parent_edge[v] == e as u32 {
            kind[e] = EdgeKind::Tree;
            tail[e] = u as u32;
            head[e] = v as u32;
        } else if parent_edge[u] == e as u32 {
            kind[e] = EdgeKind::Tree;
            tail[e] = v as u32;
            head[e] = u as u32;
        } else {
            // back edge: deeper endpoint (larger preorder label) is the tail
            let (t, h) = if u > v { (u, v) } else { (v, u) };
            tail[e] = t as u32;
            head[e] = h as u32;
            debug_assert!(pre[h] <= pre[t] && post[t] <= post[h]);
        }
    }

    let dfs = DfsStructure {
        root: 0,
        parent,
        parent_edge,
        pre,
        post,
        depth,
        kind,
        tail,
        head,
        order: (0..n as u32).collect(),
        subtree_size,
    };
    Ok((rg, dfs))
}

/// Renames vertices to preorder positions (edge ids stay put) and returns the
/// renamed graph together with its DFS structure, derived by permuting `dfs`
/// rather than searching again. Tree walks over the result touch memory
/// near-sequentially, which matters at the million-edge scale.
pub fn relabel_by_preorder(g: &Multigraph, dfs: &DfsStructure) -> (Multigraph, DfsStructure) {
    let n = g.vertex_count();
    let mut perm = vec![0u32; n];
    for (i, &v) in dfs.order.iter().enumerate() {
        perm[v as usize] = i as u32;
    }
    let relabeled = g.relabel(&perm);

    let at = |i: usize| dfs.order[i] as usize;
    let new_dfs = DfsStructure {
        root: 0,
        parent: (0..n)
            .map(|i| match dfs.parent[at(i)] {
                NO_VERTEX => NO_VERTEX,
                p => perm[p as usize],
            })
            .collect(),
        parent_edge: (0..n).map(|i| dfs.parent_edge[at(i)]).collect(),
        pre: (0..n).map(|i| dfs.pre[at(i)]).collect(),
        post: (0..n).map(|i| dfs.post[at(i)]).collect(),
        depth: (0..n).map(|i| dfs.depth[at(i)]).collect(),
        kind: dfs.kind.clone(),
        tail: dfs.tail.iter().map(|&t| perm[t as usize]).collect(),
        head: dfs.head.iter().map(|&h| perm[h as usize]).collect(),
        order: (0..n as u32).collect(),
        subtree_size: (0..n).map(|i| dfs.subtree_size[at(i)]).collect(),
    };
    (relabeled, new_dfs)
}

/// Binary-lifting LCA over the DFS tree.
pub struct LcaTable {
    up: Vec<Vec<u32>>,
    pre: Vec<u32>,
    post: Vec<u32>,
}

impl LcaTable {
    pub fn new(dfs: &DfsStructure) -> Self {
        let n = dfs.parent.len();
        let levels = usize::BITS as usize - n.max(2).leading_zeros() as usize;
        let mut up = vec![vec![0u32; n]; levels];
        for v in 0..n {
            up[0][v] = dfs.parent_of(v).unwrap_or(v) as u32;
        }
        for k in 1..levels {
            for v in 0..n {
                up[k][v] = up[k - 1][up[k - 1][v] as usize];
            }
        }
        LcaTable {
            up,
            pre: dfs.pre.clone(),
            post: dfs.post.clone(),
        }
    }

    #[inline]
    fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.pre[u] <= self.pre[v] && self.post[v] <= self.post[u]
    }

    pub fn lca(&self, mut u: usize, v: usize) -> usize {
        if self.is_ancestor(u, v) {
            return u;
        }
        for k in (0..self.up.len()).rev() {
            let a = self.up[k][u] as usize;
            if !self.is_ancestor(a, v) {
                u = a;
            }
        }
        self.up[0][u] as usize
    }
}

/// Absent-entry sentinel in the low tables (edge counts are capped at u32).
pub const NO_EDGE: u32 = u32::MAX;

#[inline]
fn opt(x: u32) -> Option<EdgeId> {
    (x != NO_EDGE).then_some(x as usize)
}

/// Generalized low tables, indexed by the deeper endpoint of each tree edge.
/// The root's row is unused. Entries are edge ids with [`NO_EDGE`] for absent
/// slots; these rows are the hottest per-vertex state in the cut solvers, so
/// they stay half-width.
#[derive(Debug, Clone)]
pub struct LowTables {
    pub low: Vec<[u32; 3]>,
    pub maxup: Vec<[u32; 2]>,
    pub mindn: Vec<[u32; 2]>,
    pub maxdn: Vec<[u32; 2]>,
}

impl LowTables {
    #[inline]
    pub fn low_at(&self, v: VertexId, i: usize) -> Option<EdgeId> {
        opt(self.low[v][i])
    }
    #[inline]
    pub fn maxup_at(&self, v: VertexId, i: usize) -> Option<EdgeId> {
        opt(self.maxup[v][i])
    }
    #[inline]
    pub fn mindn_at(&self, v: VertexId, i: usize) -> Option<EdgeId> {
        opt(self.mindn[v][i])
    }
    #[inline]
    pub fn maxdn_at(&self, v: VertexId, i: usize) -> Option<EdgeId> {
        opt(self.maxdn[v][i])
    }
    pub fn low1(&self, v: VertexId) -> Option<EdgeId> {
        self.low_at(v, 0)
    }
    pub fn maxup1(&self, v: VertexId) -> Option<EdgeId> {
        self.maxup_at(v, 0)
    }
    pub fn mindn1(&self, v: VertexId) -> Option<EdgeId> {
        self.mindn_at(v, 0)
    }
    pub fn maxdn1(&self, v: VertexId) -> Option<EdgeId> {
        self.maxdn_at(v, 0)
    }
}

/// Computes low1..3 in a single bottom-up pass and maxup/mindn/maxdn through
/// three path-top-k invocations (k = 2) over the back edges seen as tree
/// paths. Requires every tree edge to have at least one leaping back edge
/// (2-edge-connected input); ties go to the smallest edge id.
pub fn compute_low_tables(g: &Multigraph, dfs: &DfsStructure) -> Result<LowTables> {
    let n = g.vertex_count();

    // low1..3: merge per-subtree candidates bottom-up, keeping the three
    // leaping back edges with the smallest (head preorder, edge id). Any one
    // edge reaches a vertex through at most one child, so fixed top-3 arrays
    // suffice and no dedup is needed.
    const NONE_C: (u32, u32) = (u32::MAX, u32::MAX);
    fn push3(arr: &mut [(u32, u32); 3], x: (u32, u32)) {
        if x < arr[2] {
            if x < arr[1] {
                if x < arr[0] {
                    *arr = [x, arr[0], arr[1]];
                } else {
                    arr[2] = arr[1];
                    arr[1] = x;
                }
            } else {
                arr[2] = x;
            }
        }
    }
    let mut cand = vec![[NONE_C; 3]; n];
    for e in dfs.back_edges() {
        push3(
            &mut cand[dfs.tail[e] as usize],
            (dfs.pre[dfs.head[e] as usize], e as u32),
        );
    }
    for &v in dfs.order.iter().rev() {
        let v = v as usize;
        if v == dfs.root {
            continue;
        }
        // entries are sorted by head preorder, so the ones whose head stays
        // inside T_v form a suffix; drop it
        let mut arr = cand[v];
        for slot in arr.iter_mut() {
            if slot.0 >= dfs.pre[v] {
                *slot = NONE_C;
            }
        }
        if arr[0] == NONE_C {
            return Err(Error::NotTwoEdgeConnected {
                bridge: dfs.tree_edge_above(v),
            });
        }
        cand[v] = arr;
        let p = dfs.parent[v] as usize;
        for &x in arr.iter().take_while(|&&x| x != NONE_C) {
            push3(&mut cand[p], x);
        }
    }
    let mut low_table = vec![[NO_EDGE; 3]; n];
    for v in 0..n {
        if v == dfs.root {
            continue;
        }
        for (i, &(_, e)) in cand[v].iter().take_while(|&&x| x != NONE_C).enumerate() {
            low_table[v][i] = e as u32;
        }
    }

    // maxup/mindn/maxdn via path-top-k with k = 2.
    let tree = RootedTree {
        parent: (0..n).map(|v| dfs.parent_of(v)).collect(),
        root: dfs.root,
    };
    let backs: Vec<EdgeId> = dfs.back_edges().collect();
    let cap = 2 * n;
    let prep = prepare_tree(&tree);
    // endpoints are fixed across the three weightings; only w is rewritten
    let mut paths: Vec<WeightedPath> = backs
        .iter()
        .map(|&e| WeightedPath {
            u: dfs.tail[e],
            v: dfs.head[e],
            w: 0,
        })
        .collect();
    let mut run = |weight_of: &dyn Fn(EdgeId) -> usize| -> Result<Vec<[u32; 2]>> {
        for (p, &e) in paths.iter_mut().zip(&backs) {
            p.w = weight_of(e) as u32;
        }
        let cover = top_k_min_paths_prepared(&prep, &paths, 2, cap)?;
        let mut table = vec![[NO_EDGE; 2]; n];
        for v in 0..n {
            for (i, &pi) in cover.list(v).iter().take(2).enumerate() {
                table[v][i] = backs[pi as usize] as u32;
            }
        }
        Ok(table)
    };

    let maxup = run(&|e| cap - dfs.pre[dfs.head[e] as usize] as usize)?;
    let mindn = run(&|e| dfs.pre[dfs.tail[e] as usize] as usize)?;
    let maxdn = run(&|e| cap - dfs.pre[dfs.tail[e] as usize] as usize)?;

    Ok(LowTables {
        low: low_table,
        maxup,
        mindn,
        maxdn,
    })
}
