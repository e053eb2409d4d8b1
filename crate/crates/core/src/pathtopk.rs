//! For every edge of a rooted tree, the k minimum-weight paths covering it.
//!
//! Paths are bucketed by weight (counting sort, stable by path index), then
//! swept cheapest-first: each half of a path climbs from its endpoint toward
//! the other using the union-tree DSU, appending its index to every edge's
//! list on the way and fusing an edge into its parent the moment the list is
//! full. Total climb work is bounded by nk + 2p. Storage is flat: the lists
//! live in one n*k block, since every per-edge list is capped at k.

use crate::dsu::UnionTreeDsu;
use crate::error::Error;
use crate::graph::VertexId;
use crate::Result;

/// Half-width endpoints and weight: path batches are the largest transient
/// arrays in the solver pipeline, so the 12-byte layout matters.
#[derive(Debug, Clone, Copy)]
pub struct WeightedPath {
    pub u: u32,
    pub v: u32,
    /// Integer weight in 0..=C.
    pub w: u32,
}

/// A rooted tree given by parent pointers; `parent[root] == None`.
#[derive(Debug, Clone)]
pub struct RootedTree {
    pub parent: Vec<Option<VertexId>>,
    pub root: VertexId,
}

/// Result of [`top_k_min_paths`]: tree edges are identified by their deeper
/// endpoint, so `list(v)` covers the edge (parent(v), v); the root's list
/// stays empty. Entries are path indices in increasing weight order.
#[derive(Debug, Clone)]
pub struct TopKCover {
    k: usize,
    len: Vec<u32>,
    lists: Vec<u32>,
}

impl TopKCover {
    #[inline]
    pub fn list(&self, v: VertexId) -> &[u32] {
        &self.lists[v * self.k..v * self.k + self.len[v] as usize]
    }
}

struct TreeOrders {
    pre: Vec<u32>,
    post: Vec<u32>,
    depth: Vec<u32>,
}

fn tree_orders(tree: &RootedTree) -> TreeOrders {
    let n = tree.parent.len();
    // children in CSR form
    let mut start = vec![0u32; n + 1];
    let mut root_count = 0;
    for v in 0..n {
        match tree.parent[v] {
            Some(p) => start[p + 1] += 1,
            None => root_count += 1,
        }
    }
    assert_eq!(root_count, 1, "tree must have exactly one root");
    assert!(tree.parent[tree.root].is_none());
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut kids = vec![0u32; n - 1];
    let mut fill = start.clone();
    for v in 0..n {
        if let Some(p) = tree.parent[v] {
            kids[fill[p] as usize] = v as u32;
            fill[p] += 1;
        }
    }

    let mut pre = vec![0u32; n];
    let mut post = vec![0u32; n];
    let mut depth = vec![0u32; n];
    let mut clock = 0u32;
    let mut visited = 0usize;
    let mut stack = vec![(tree.root, start[tree.root])];
    clock += 1;
    pre[tree.root] = clock;
    visited += 1;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx < start[v + 1] {
            let c = kids[*idx as usize] as usize;
            *idx += 1;
            depth[c] = depth[v] + 1;
            clock += 1;
            pre[c] = clock;
            visited += 1;
            stack.push((c, start[c]));
        } else {
            clock += 1;
            post[v] = clock;
            stack.pop();
        }
    }
    assert_eq!(visited, n, "parent pointers must form one tree");
    TreeOrders { pre, post, depth }
}

/// Tree artifacts shared by every [`top_k_min_paths`] run over the same tree:
/// orders for ancestor tests plus the half-width parent array. Callers that
/// solve several weightings of one tree build this once.
pub struct PreparedTree {
    ord: TreeOrders,
    /// u32::MAX at the root; never read there.
    parent: Vec<u32>,
}

pub fn prepare_tree(tree: &RootedTree) -> PreparedTree {
    PreparedTree {
        ord: tree_orders(tree),
        parent: tree
            .parent
            .iter()
            .map(|p| p.map_or(u32::MAX, |p| p as u32))
            .collect(),
    }
}

pub fn top_k_min_paths(
    tree: &RootedTree,
    paths: &[WeightedPath],
    k: usize,
    max_weight: usize,
) -> Result<TopKCover> {
    top_k_min_paths_prepared(&prepare_tree(tree), paths, k, max_weight)
}

pub fn top_k_min_paths_prepared(
    prep: &PreparedTree,
    paths: &[WeightedPath],
    k: usize,
    max_weight: usize,
) -> Result<TopKCover> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let n = prep.parent.len();
    for (i, p) in paths.iter().enumerate() {
        if p.u as usize >= n || p.v as usize >= n {
            return Err(Error::InvalidArgument(format!(
                "path {i} has an endpoint outside the tree"
            )));
        }
        if p.w as usize > max_weight {
            return Err(Error::InvalidArgument(format!(
                "path {i} has weight {} > max {max_weight}",
                p.w
            )));
        }
    }

    let ord = &prep.ord;
    let is_ancestor = |u: usize, v: usize| {
        ord.pre[u] <= ord.pre[v] && ord.post[v] <= ord.post[u]
    };
    let parent = &prep.parent;

    // Stable counting sort by weight, emitting (u, v, index) triples so the
    // sweep below reads them sequentially.
    let mut count = vec![0u32; max_weight + 1];
    for p in paths {
        count[p.w as usize] += 1;
    }
    let mut acc = 0u32;
    for c in count.iter_mut() {
        let here = *c;
        *c = acc;
        acc += here;
    }
    let mut sorted = vec![(0u32, 0u32, 0u32); paths.len()];
    for (i, p) in paths.iter().enumerate() {
        sorted[count[p.w as usize] as usize] = (p.u, p.v, i as u32);
        count[p.w as usize] += 1;
    }

    let mut dsu = UnionTreeDsu::from_half_width(prep.parent.clone(), ord.depth.clone());
    let mut len = vec![0u32; n];
    let mut lists = vec![0u32; n * k];
    let mut work = 0usize;

    // Climb from `from` toward `to`, registering `i` on every live edge.
    let mut go = |dsu: &mut UnionTreeDsu, from: usize, to: usize, i: u32, work: &mut usize| {
        let mut u = dsu.lowest(from);
        while !is_ancestor(u, to) {
            *work += 1;
            lists[u * k + len[u] as usize] = i;
            len[u] += 1;
            let p = parent[u] as usize;
            if len[u] as usize == k {
                dsu.union(u, p);
            }
            u = dsu.lowest(p);
        }
    };

    for &(u, v, i) in &sorted {
        go(&mut dsu, u as usize, v as usize, i, &mut work);
        go(&mut dsu, v as usize, u as usize, i, &mut work);
    }
    assert!(
        work <= n * k + 2 * paths.len(),
        "climb work {work} exceeds bound {}",
        n * k + 2 * paths.len()
    );

    Ok(TopKCover { k, len, lists })
}
