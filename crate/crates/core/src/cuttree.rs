//! The rooted tree H whose edges biject with the 3-edge-cuts of a
//! 3-edge-connected graph. Vertices map into H so that each cut's edge splits
//! H exactly along the cut's vertex partition; the non-empty fibers are the
//! 4-edge-connected components.

use crate::cuts::{Cut3, CutSet};
use crate::dfs::DfsStructure;
use crate::error::Error;
use crate::graph::Labeling;
use crate::Result;

#[derive(Debug, Clone)]
pub struct CutTree {
    /// Parent per H-node; node 0 is the root (image of the DFS root).
    pub parent: Vec<Option<usize>>,
    /// Cut index (into the originating CutSet) of the edge above each
    /// non-root node; None only for the root.
    pub node_cut: Vec<Option<usize>>,
    /// H-node of each graph vertex.
    pub psi: Vec<usize>,
    /// Child-side H-node of each cut's edge, indexed like the CutSet.
    pub phi: Vec<usize>,
    /// Size of the root-free side of each cut.
    pub part_size: Vec<usize>,
}

/// |P(c)| for every cut: the size of the side of G - c not containing the
/// DFS root. Inclusion-exclusion over the cut's tree edges: a vertex is cut
/// off iff an odd number of them lie on its root path.
pub fn part_sizes(dfs: &DfsStructure, cuts: &CutSet) -> Result<Vec<usize>> {
    let mut sizes = Vec::with_capacity(cuts.len());
    for (ci, cut) in cuts.iter().enumerate() {
        let tree_edges: Vec<usize> = cut
            .0
            .iter()
            .copied()
            .filter(|&e| dfs.is_tree_edge(e))
            .collect();
        if tree_edges.is_empty() {
            return Err(Error::InvalidCutSet(format!(
                "cut #{ci} {cut:?} contains no tree edge"
            )));
        }
        let mut total: i64 = 0;
        for &e in &tree_edges {
            let d = dfs.head[e] as usize;
            let cnt = tree_edges
                .iter()
                .filter(|&&f| dfs.is_ancestor(dfs.head[f] as usize, d))
                .count();
            let term = dfs.subtree_size[d] as i64;
            total += if cnt % 2 == 1 { term } else { -term };
        }
        if total <= 0 || total as usize >= dfs.parent.len() {
            return Err(Error::InvalidCutSet(format!(
                "cut #{ci} {cut:?} has side size {total}"
            )));
        }
        sizes.push(total as usize);
    }
    Ok(sizes)
}

/// Builds H by inserting, for each tree edge in DFS order, the path of cuts
/// containing it: first walking up from the shallower endpoint's node through
/// already-placed cuts, then extending downward, creating one fresh node per
/// newly placed cut. An inconsistency (a cut forced to attach somewhere other
/// than the walk position) means the supplied cut set was not the true,
/// complete set.
pub fn build_cut_tree(dfs: &DfsStructure, cuts: &CutSet, sizes: &[usize]) -> Result<CutTree> {
    let n = dfs.parent.len();
    assert_eq!(sizes.len(), cuts.len());

    // cut indices in decreasing |P(c)| order, stable within a size
    let mut buckets = vec![Vec::new(); n + 1];
    for (ci, &s) in sizes.iter().enumerate() {
        buckets[s].push(ci);
    }
    // per tree edge (keyed by deeper endpoint): containing cuts, decreasing size
    let mut lists = vec![Vec::new(); n];
    for bucket in buckets.iter().rev() {
        for &ci in bucket {
            for &e in &cuts.cuts[ci].0 {
                if dfs.is_tree_edge(e) {
                    lists[dfs.head[e] as usize].push(ci);
                }
            }
        }
    }

    let mut parent: Vec<Option<usize>> = vec![None];
    let mut node_cut: Vec<Option<usize>> = vec![None];
    let mut psi = vec![usize::MAX; n];
    let mut phi = vec![usize::MAX; cuts.len()];
    let mut touched: Vec<Option<usize>> = vec![None; cuts.len()];
    let mut touch_calls = vec![0usize; cuts.len()];
    psi[dfs.root] = 0;

    for &v in &dfs.order[1..] {
        let v = v as usize;
        let e = dfs.tree_edge_above(v);
        let u = dfs.parent[v] as usize;
        let mut x = psi[u];
        debug_assert_ne!(x, usize::MAX);

        // ascend through placed cuts that contain e
        while let Some(c) = node_cut[x] {
            if !cuts.cuts[c].contains(e) {
                break;
            }
            touched[c] = Some(e);
            touch_calls[c] += 1;
            x = parent[x].unwrap();
        }

        // descend along the remaining cuts of l(e), largest side first
        for &c in &lists[v] {
            if touched[c] == Some(e) {
                continue;
            }
            touch_calls[c] += 1;
            if phi[c] == usize::MAX {
                let fresh = parent.len();
                parent.push(Some(x));
                node_cut.push(Some(c));
                phi[c] = fresh;
            } else if parent[phi[c]] != Some(x) {
                return Err(Error::InvalidCutSet(format!(
                    "cut #{c} {:?} does not attach at the walk position; \
                     the cut set is not the complete set of 3-edge-cuts",
                    cuts.cuts[c]
                )));
            }
            x = phi[c];
        }
        psi[v] = x;
    }

    for (c, &p) in phi.iter().enumerate() {
        if p == usize::MAX {
            return Err(Error::InvalidCutSet(format!(
                "cut #{c} {:?} contains no tree edge on any vertex path",
                cuts.cuts[c]
            )));
        }
        // a cut is only ever handled by the calls of its own member edges
        assert!(touch_calls[c] <= 3, "cut #{c} touched {} times", touch_calls[c]);
    }

    Ok(CutTree {
        parent,
        node_cut,
        psi,
        phi: phi.clone(),
        part_size: sizes.to_vec(),
    })
}

/// The non-empty psi-fibers, labeled in order of each class's smallest vertex.
pub fn four_ecc_from_tree(tree: &CutTree) -> Labeling {
    Labeling::from_keys(&tree.psi)
}

impl CutTree {
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Vertices mapped to each H-node (possibly empty), by node id.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for (v, &x) in self.psi.iter().enumerate() {
            out[x].push(v);
        }
        out
    }

    pub fn to_dot(&self, cuts: &CutSet) -> String {
        let fibers = self.fibers();
        let mut s = String::from("graph cut_tree {\n");
        for (x, fiber) in fibers.iter().enumerate() {
            let label: Vec<String> = fiber.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("  n{x} [label=\"{{{}}}\"];\n", label.join(",")));
        }
        for x in 1..self.node_count() {
            let p = self.parent[x].unwrap();
            let c = self.node_cut[x].unwrap();
            let Cut3(t) = cuts.cuts[c];
            s.push_str(&format!(
                "  n{p} -- n{x} [label=\"cut {{{},{},{}}} side {}\"];\n",
                t[0], t[1], t[2], self.part_size[c]
            ));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, cuts: &CutSet) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = (1..self.node_count())
            .map(|x| {
                let c = self.node_cut[x].unwrap();
                serde_json::json!({
                    "parent": self.parent[x].unwrap(),
                    "child": x,
                    "cut": cuts.cuts[c].0,
                    "side_size": self.part_size[c],
                })
            })
            .collect();
        serde_json::json!({
            "root": 0,
            "nodes": self.fibers(),
            "edges": edges,
        })
    }
}
