//! Enumeration of every 3-edge-cut of a 3-edge-connected multigraph.
//!
//! One pass over a DFS tree finds all cuts containing exactly one or two tree
//! edges, split into three cases by how the cut's back edge relates to the
//! tree edges; cuts made of three tree edges are recovered by contracting the
//! connected components of the non-tree edges and re-running on the smaller
//! graph, which loses at least a third of the edges per round. Case solvers
//! come in two interchangeable flavors: deterministic (exact) and randomized
//! (xor-hash lookups, Monte Carlo).

use serde::Serialize;

use crate::dfs::{
    build_dfs_relabeled, compute_low_tables, DfsStructure, LcaTable, LowTables,
};
use crate::dsu::{UnionFind, UnionTreeDsu};
use crate::error::Error;
use crate::graph::{EdgeId, Labeling, Multigraph, VertexId};
use crate::hashing::{assign_compressed_hashes, offline_membership_by_index, SplitMix64, NO_MATCH};
use crate::pathtopk::{top_k_min_paths, RootedTree, WeightedPath};
use crate::Result;

/// A 3-edge-cut, stored as a sorted triple of distinct edge ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cut3(pub [EdgeId; 3]);

impl Cut3 {
    pub fn new(a: EdgeId, b: EdgeId, c: EdgeId) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        assert!(t[0] != t[1] && t[1] != t[2], "cut edges must be distinct");
        Cut3(t)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(&e)
    }
}

/// Sorted, deduplicated collection of cuts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutSet {
    pub cuts: Vec<Cut3>,
}

impl CutSet {
    pub fn from_candidates(mut cuts: Vec<Cut3>) -> Self {
        cuts.sort_unstable();
        cuts.dedup();
        CutSet { cuts }
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cut3> {
        self.cuts.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Deterministic,
    Randomized { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutCase {
    OneTreeEdge,
    TwoLower,
    TwoUpper,
}

/// Where and how a cut was found; `cut` is in original edge ids, `level_cut`
/// in the ids of the contracted graph it was discovered in.
#[derive(Debug, Clone)]
pub struct Discovery {
    pub cut: Cut3,
    pub level_cut: Cut3,
    pub level: usize,
    pub case: CutCase,
}

#[derive(Debug, Clone, Default)]
pub struct EnumStats {
    /// (vertex count, edge count) per contraction level.
    pub levels: Vec<(usize, usize)>,
    pub discoveries: Vec<Discovery>,
}

fn need(entry: Option<EdgeId>, table: &str, v: VertexId) -> Result<EdgeId> {
    entry.ok_or_else(|| Error::NotThreeEdgeConnected {
        reason: format!("{table} undefined for the tree edge above vertex {v}"),
    })
}

/// Head vertex of the deepest tree edge f >= (edge above v) such that every
/// back edge leaping the edge above v originates in the subtree below f.
/// Equals the LCA of the extreme leaping tails.
pub fn deepest_dn_cut(
    dfs: &DfsStructure,
    lca: &LcaTable,
    low: &LowTables,
    v: VertexId,
) -> Result<VertexId> {
    let a = need(low.mindn_at(v, 0), "mindn1", v)?;
    let b = need(low.maxdn_at(v, 0), "maxdn1", v)?;
    Ok(lca.lca(dfs.tail[a] as usize, dfs.tail[b] as usize))
}

/// Same, but with the leaping edge mindn1 (the smallest-preorder tail)
/// excluded from the origin condition.
pub fn deepest_dn_cut_no_min(
    dfs: &DfsStructure,
    lca: &LcaTable,
    low: &LowTables,
    v: VertexId,
) -> Result<VertexId> {
    let g = need(low.mindn_at(v, 0), "mindn1", v)?;
    let a = need(low.mindn_at(v, 1), "mindn2", v)?;
    let b = match low.maxdn_at(v, 0) {
        Some(x) if x != g => x,
        _ => need(low.maxdn_at(v, 1), "maxdn2", v)?,
    };
    Ok(lca.lca(dfs.tail[a] as usize, dfs.tail[b] as usize))
}

/// Same, but excluding maxdn1 (the largest-preorder tail).
pub fn deepest_dn_cut_no_max(
    dfs: &DfsStructure,
    lca: &LcaTable,
    low: &LowTables,
    v: VertexId,
) -> Result<VertexId> {
    let g = need(low.maxdn_at(v, 0), "maxdn1", v)?;
    let a = need(low.maxdn_at(v, 1), "maxdn2", v)?;
    let b = match low.mindn_at(v, 0) {
        Some(x) if x != g => x,
        _ => need(low.mindn_at(v, 1), "mindn2", v)?,
    };
    Ok(lca.lca(dfs.tail[a] as usize, dfs.tail[b] as usize))
}

/// Cuts with exactly one tree edge e: the leaping set of e must be exactly
/// {low1(e), low2(e)}, i.e. low3(e) is undefined. A missing low2 would mean a
/// 2-edge-cut, which the 3-edge-connectedness precondition forbids.
pub fn case_one_tree_edge(dfs: &DfsStructure, low: &LowTables) -> Result<Vec<Cut3>> {
    let mut out = Vec::new();
    for v in 0..dfs.parent.len() {
        if v == dfs.root || low.low_at(v, 2).is_some() {
            continue;
        }
        let l1 = need(low.low_at(v, 0), "low1", v)?;
        let l2 = need(low.low_at(v, 1), "low2", v)?;
        out.push(Cut3::new(dfs.tree_edge_above(v), l1, l2));
    }
    Ok(out)
}

/// Cuts {e, f, g} with tree edges e < f and the back edge g connecting the
/// subtree below f to the part strictly between f and e. For each f the only
/// possible g is maxup1(f), and the only possible e is the deepest tree edge
/// whose deepest-down-cut reaches f; a single k=1 path-top-k call finds it
/// for all f at once.
pub fn case_two_lower(
    dfs: &DfsStructure,
    lca: &LcaTable,
    low: &LowTables,
) -> Result<Vec<Cut3>> {
    let n = dfs.parent.len();
    let tree = RootedTree {
        parent: (0..n).map(|v| dfs.parent_of(v)).collect(),
        root: dfs.root,
    };
    // one path per tree edge e: from head(e) down to the deepest-down-cut
    // head; lower weight = deeper e, so the k=1 winner is the deepest e
    let mut paths = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n {
        if v == dfs.root {
            continue;
        }
        let d = deepest_dn_cut(dfs, lca, low, v)?;
        paths.push(WeightedPath {
            u: v as u32,
            v: d as u32,
            w: (n - dfs.depth[v] as usize) as u32,
        });
    }
    let cover = top_k_min_paths(&tree, &paths, 1, n)?;

    let mut out = Vec::new();
    for f in 0..n {
        if f == dfs.root {
            continue;
        }
        let Some(&pi) = cover.list(f).first() else {
            continue;
        };
        let pi = pi as usize;
        let ev = paths[pi].u as usize; // head of e; strictly above f since paths cover only below their top
        debug_assert!(ev != f && dfs.is_ancestor(ev, f));
        let g = need(low.maxup_at(f, 0), "maxup1", f)?;
        let g2 = need(low.maxup_at(f, 1), "maxup2", f)?;
        // g must land strictly between f and e; every other edge leaping f
        // must leap e too (its head is the deepest after g's)
        if dfs.is_ancestor(ev, dfs.head[g] as usize) && !dfs.is_ancestor(ev, dfs.head[g2] as usize) {
            out.push(Cut3::new(
                dfs.tree_edge_above(ev),
                dfs.tree_edge_above(f),
                g,
            ));
        }
    }
    Ok(out)
}

/// The jump tree over vertices: the node for a non-root vertex v stands for
/// the tree edge above v, and its parent is the head of maxup1 of that edge
/// (always a strict ancestor). The DFS root stands for the virtual top node.
pub fn build_jump_tree(dfs: &DfsStructure, low: &LowTables) -> Result<RootedTree> {
    let n = dfs.parent.len();
    let mut parent = vec![None; n];
    for v in 0..n {
        if v == dfs.root {
            continue;
        }
        let g = need(low.maxup_at(v, 0), "maxup1", v)?;
        parent[v] = Some(dfs.head[g] as usize);
        debug_assert!(dfs.depth[dfs.head[g] as usize] < dfs.depth[v]);
    }
    Ok(RootedTree {
        parent,
        root: dfs.root,
    })
}

/// Cuts {e, f, g} with tree edges e < f and the back edge g connecting the
/// subtree below f to the part above e. For each e the back edge is one of
/// mindn1(e)/maxdn1(e); the partner f is resolved by walking the jump tree
/// from the no-min/no-max deepest-down-cut, simulated with a union-tree DSU
/// while sweeping e from deepest to shallowest.
pub fn case_two_upper(
    dfs: &DfsStructure,
    lca: &LcaTable,
    low: &LowTables,
) -> Result<Vec<Cut3>> {
    let n = dfs.parent.len();
    let jump = build_jump_tree(dfs, low)?;

    let mut depth_u = vec![0usize; n];
    let mut children_u = vec![Vec::new(); n];
    for &v in &dfs.order {
        let v = v as usize;
        // jump parents are strict tree ancestors, so preorder sees them first
        if let Some(p) = jump.parent[v] {
            depth_u[v] = depth_u[p] + 1;
            children_u[p].push(v);
        }
    }
    let mut dsu = UnionTreeDsu::new(jump.parent.clone(), depth_u);

    // vertices by decreasing tree depth
    let mut by_depth = vec![Vec::new(); n];
    for v in 0..n {
        by_depth[dfs.depth[v] as usize].push(v);
    }

    let mut out = Vec::new();
    for d in (1..n).rev() {
        for i in 0..by_depth[d].len() {
            let v = by_depth[d][i];
            for j in 0..children_u[v].len() {
                let c = children_u[v][j];
                dsu.union(v, c);
            }
            let branches = [
                (low.mindn_at(v, 0), deepest_dn_cut_no_min(dfs, lca, low, v)?),
                (low.maxdn_at(v, 0), deepest_dn_cut_no_max(dfs, lca, low, v)?),
            ];
            for (g, f0) in branches {
                let g = need(g, "mindn1/maxdn1", v)?;
                let fp = dsu.lowest(f0);
                // fp == v means no valid partner below e; g originating under
                // fp would put it on the wrong side of the candidate cut
                if fp != v && !dfs.is_ancestor(fp, dfs.tail[g] as usize) {
                    debug_assert!(fp != dfs.root);
                    out.push(Cut3::new(
                        dfs.tree_edge_above(v),
                        dfs.tree_edge_above(fp),
                        g,
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn solve_level_deterministic(
    dfs: &DfsStructure,
    low: &LowTables,
) -> Result<Vec<(Cut3, CutCase)>> {
    let lca = LcaTable::new(dfs);
    let mut out = Vec::new();
    for c in case_one_tree_edge(dfs, low)? {
        out.push((c, CutCase::OneTreeEdge));
    }
    for c in case_two_lower(dfs, &lca, low)? {
        out.push((c, CutCase::TwoLower));
    }
    for c in case_two_upper(dfs, &lca, low)? {
        out.push((c, CutCase::TwoUpper));
    }
    Ok(out)
}

/// Randomized case solvers: the third edge of each candidate cut is the one
/// whose compressed hash equals the xor of the two known edges' hashes, found
/// by one batched offline membership pass. Candidates are Monte Carlo: a
/// 64-bit collision can add or drop a cut.
fn solve_level_randomized(
    g: &Multigraph,
    dfs: &DfsStructure,
    low: &LowTables,
    seed: u64,
) -> Result<Vec<(Cut3, CutCase)>> {
    let h = assign_compressed_hashes(g, dfs, seed);

    // at most 4 candidate pairs per non-root vertex
    let mut queries = Vec::with_capacity(4 * dfs.parent.len());
    let mut meta: Vec<(CutCase, u32, u32)> = Vec::with_capacity(4 * dfs.parent.len());
    for v in 0..dfs.parent.len() {
        if v == dfs.root {
            continue;
        }
        let e = dfs.tree_edge_above(v);
        if let Some(l1) = low.low_at(v, 0) {
            queries.push(h.ch[e] ^ h.ch[l1]);
            meta.push((CutCase::OneTreeEdge, e as u32, l1 as u32));
        }
        if let Some(g1) = low.maxup_at(v, 0) {
            queries.push(h.ch[e] ^ h.ch[g1]);
            meta.push((CutCase::TwoLower, e as u32, g1 as u32));
        }
        for g1 in [low.mindn_at(v, 0), low.maxdn_at(v, 0)].into_iter().flatten() {
            queries.push(h.ch[e] ^ h.ch[g1]);
            meta.push((CutCase::TwoUpper, e as u32, g1 as u32));
        }
    }

    let answers = offline_membership_by_index(&queries, &h.ch);
    let mut out = Vec::new();
    for (&(case, a, b), ans) in meta.iter().zip(answers) {
        if ans == NO_MATCH {
            continue;
        }
        let (x, a, b) = (ans as usize, a as usize, b as usize);
        let ok = match case {
            // a = tree edge, b = low1(a): partner must be another back edge
            CutCase::OneTreeEdge => !dfs.is_tree_edge(x) && x != b,
            // a = deeper tree edge f, b = maxup1(f): partner is the upper tree edge
            CutCase::TwoLower => dfs.is_tree_edge(x) && x != a,
            // a = upper tree edge e, b = mindn1/maxdn1: partner is the deeper tree edge
            CutCase::TwoUpper => dfs.is_tree_edge(x) && x != a,
        };
        if ok {
            out.push((Cut3::new(a, b, x), case));
        }
    }
    Ok(out)
}

/// Contracts the connected components of the non-tree edges; only tree edges
/// whose endpoints fall into different components survive (self-loops drop).
/// Returns the contracted graph and a map from its edge ids to `g`'s.
pub fn contract_non_tree(g: &Multigraph, dfs: &DfsStructure) -> (Multigraph, Vec<EdgeId>) {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for e in 0..g.edge_count() {
        if !dfs.is_tree_edge(e) {
            let (u, v) = g.endpoints(e);
            uf.union(u, v);
        }
    }
    let keys: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let comp = Labeling::from_keys(&keys);

    let mut edges = Vec::new();
    let mut map = Vec::new();
    for e in 0..g.edge_count() {
        if dfs.is_tree_edge(e) {
            let (u, v) = g.endpoints(e);
            if comp.label[u] != comp.label[v] {
                edges.push((comp.label[u], comp.label[v]));
                map.push(e);
            }
        }
    }
    let contracted =
        Multigraph::new(comp.class_count, edges).expect("labels are dense and in range");
    (contracted, map)
}

/// Exact connectivity check: does removing the three edges disconnect g?
pub fn verify_cut(g: &Multigraph, cut: Cut3) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &(w, e) in g.adj(u) {
            let (w, e) = (w as usize, e as usize);
            if cut.contains(e) || seen[w] {
                continue;
            }
            seen[w] = true;
            reached += 1;
            stack.push(w);
        }
    }
    reached < n
}

pub fn enumerate_3cuts(g: &Multigraph, mode: Mode) -> Result<CutSet> {
    enumerate_3cuts_with_stats(g, mode, false).map(|(c, _)| c)
}

/// Full enumeration across contraction levels. `paranoid` re-verifies every
/// candidate against the level graph before accepting it (useful for the
/// randomized mode, whose raw candidates are Monte Carlo).
pub fn enumerate_3cuts_with_stats(
    g: &Multigraph,
    mode: Mode,
    paranoid: bool,
) -> Result<(CutSet, EnumStats)> {
    let mut stats = EnumStats::default();
    let mut found: Vec<Cut3> = Vec::new();
    if g.vertex_count() < 2 {
        return Ok((CutSet::from_candidates(found), stats));
    }

    let mut seed_stream = match mode {
        Mode::Randomized { seed } => Some(SplitMix64::new(seed)),
        Mode::Deterministic => None,
    };

    let mut map: Vec<EdgeId> = (0..g.edge_count()).collect();
    let mut level = 0usize;
    // Every level renumbers vertices by preorder so the tree walks below touch
    // memory sequentially; edge ids (and hence reported cuts) are unaffected.
    let (mut cur, mut dfs) = build_dfs_relabeled(g)?;
    loop {
        if let Some(&(_, prev_m)) = stats.levels.last() {
            // each contraction must lose at least a third of the edges
            assert!(
                cur.edge_count() <= (2 * prev_m + 2) / 3,
                "contraction level {level} kept {} of {prev_m} edges",
                cur.edge_count()
            );
        }
        stats.levels.push((cur.vertex_count(), cur.edge_count()));

        let low = compute_low_tables(&cur, &dfs)?;
        let candidates = match &mut seed_stream {
            None => solve_level_deterministic(&dfs, &low)?,
            Some(rng) => {
                let s = rng.next_u64();
                solve_level_randomized(&cur, &dfs, &low, s)?
            }
        };
        for (level_cut, case) in candidates {
            if paranoid && !verify_cut(&cur, level_cut) {
                continue;
            }
            let cut = Cut3::new(
                map[level_cut.0[0]],
                map[level_cut.0[1]],
                map[level_cut.0[2]],
            );
            found.push(cut);
            stats.discoveries.push(Discovery {
                cut,
                level_cut,
                level,
                case,
            });
        }

        let (next, emap) = contract_non_tree(&cur, &dfs);
        map = emap.into_iter().map(|e| map[e]).collect();
        level += 1;
        if next.vertex_count() <= 1 {
            break;
        }
        let (relabeled, next_dfs) = build_dfs_relabeled(&next)?;
        cur = relabeled;
        dfs = next_dfs;
    }

    Ok((CutSet::from_candidates(found), stats))
}
