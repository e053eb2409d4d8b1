//! Brute-force ground truth for every stage of the pipeline. Exponential or
//! quadratic where convenient; intended for small inputs (roughly n <= 12,
//! m <= 60) and the `verify` workflow.

use crate::cuts::{enumerate_3cuts, verify_cut, Cut3, CutSet, Mode};
use crate::dfs::{leaps_over, DfsStructure};
use crate::dsu::UnionFind;
use crate::graph::{connected_components, EdgeId, Labeling, Multigraph, VertexId};
use crate::reduction::four_ecc;

/// True iff at least k edge-disjoint s-t paths exist (min s-t cut >= k),
/// found by up to k rounds of BFS augmentation over unit capacities.
pub fn edge_connectivity_pair(g: &Multigraph, s: VertexId, t: VertexId, k: usize) -> bool {
    assert_ne!(s, t);
    let n = g.vertex_count();
    let m = g.edge_count();
    // residual capacity per edge per direction; direction 0 follows the
    // stored endpoint order
    let mut cap = vec![[1u8; 2]; m];
    let mut flow = 0;
    while flow < k {
        let mut pred: Vec<Option<(VertexId, EdgeId, usize)>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        pred[s] = Some((s, usize::MAX, 0));
        'bfs: while let Some(u) = queue.pop_front() {
            for &(w, e) in g.adj(u) {
                let (w, e) = (w as usize, e as usize);
                if w == u || pred[w].is_some() {
                    continue;
                }
                let dir = if g.endpoints(e).0 == u && g.endpoints(e).1 == w {
                    0
                } else {
                    1
                };
                if cap[e][dir] == 0 {
                    continue;
                }
                pred[w] = Some((u, e, dir));
                if w == t {
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        if pred[t].is_none() {
            break;
        }
        let mut x = t;
        while x != s {
            let (u, e, dir) = pred[x].unwrap();
            cap[e][dir] -= 1;
            cap[e][1 - dir] += 1;
            x = u;
        }
        flow += 1;
    }
    flow >= k
}

/// Exhaustive scan of all edge triples; exact but cubic in m.
pub fn brute_3cuts(g: &Multigraph) -> CutSet {
    let m = g.edge_count();
    let mut cuts = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                let cut = Cut3::new(a, b, c);
                if verify_cut(g, cut) {
                    cuts.push(cut);
                }
            }
        }
    }
    CutSet::from_candidates(cuts)
}

/// Exact k-edge-connectivity classes via pairwise max-flow. The pairwise
/// relation is an equivalence; the union-find merge is double-checked to
/// confirm no transitive closure was actually needed.
pub fn brute_partition(g: &Multigraph, k: usize) -> Labeling {
    assert!(k >= 1);
    if k == 1 {
        return connected_components(g);
    }
    let n = g.vertex_count();
    let mut pass = vec![vec![false; n]; n];
    let mut uf = UnionFind::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if edge_connectivity_pair(g, u, v, k) {
                pass[u][v] = true;
                uf.union(u, v);
            }
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            assert_eq!(
                uf.find(u) == uf.find(v),
                pass[u][v],
                "k-connectivity relation failed to be transitive at ({u}, {v})"
            );
        }
    }
    let keys: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    Labeling::from_keys(&keys)
}

/// The literal hash of an edge as a set: a non-tree edge hashes to itself, a
/// tree edge to the set of non-tree edges leaping it. Sorted by edge id.
pub fn uncompressed_hash(g: &Multigraph, dfs: &DfsStructure, e: EdgeId) -> Vec<EdgeId> {
    assert!(e < g.edge_count());
    if !dfs.is_tree_edge(e) {
        return vec![e];
    }
    dfs.back_edges().filter(|&b| leaps_over(dfs, b, e)).collect()
}

/// Outcome of one verification stage; empty mismatch list means agreement.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub stage: String,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// True iff g is connected and free of 1- and 2-edge-cuts (n >= 2 assumed
/// relevant only when true is needed); quadratic scan.
pub fn is_three_edge_connected(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    if n < 2 {
        return true;
    }
    if connected_components(g).class_count != 1 {
        return false;
    }
    let m = g.edge_count();
    let disconnects = |skip: &[EdgeId]| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(w, e) in g.adj(u) {
                let (w, e) = (w as usize, e as usize);
                if skip.contains(&e) || seen[w] {
                    continue;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
        seen.contains(&false)
    };
    for a in 0..m {
        if disconnects(&[a]) {
            return false;
        }
        for b in (a + 1)..m {
            if disconnects(&[a, b]) {
                return false;
            }
        }
    }
    true
}

/// Cross-checks the production pipeline against the brute-force answers:
/// the 4-edge-connected partition always, and the 3-cut enumeration whenever
/// the input qualifies for it.
pub fn verify_all(g: &Multigraph, mode: Mode) -> Vec<OracleReport> {
    let mut reports = Vec::new();

    let mut mism = Vec::new();
    match four_ecc(g) {
        Ok(got) => {
            let expect = brute_partition(g, 4);
            if got != expect {
                mism.push(format!(
                    "partition mismatch: got {:?}, expected {:?}",
                    got.classes(),
                    expect.classes()
                ));
            }
        }
        Err(e) => mism.push(format!("pipeline error: {e}")),
    }
    reports.push(OracleReport {
        stage: "components4".into(),
        mismatches: mism,
    });

    if g.vertex_count() >= 2 && is_three_edge_connected(g) {
        let mut mism = Vec::new();
        match enumerate_3cuts(g, mode) {
            Ok(got) => {
                let expect = brute_3cuts(g);
                if got != expect {
                    mism.push(format!(
                        "cut set mismatch: got {:?}, expected {:?}",
                        got.cuts, expect.cuts
                    ));
                }
            }
            Err(e) => mism.push(format!("enumeration error: {e}")),
        }
        reports.push(OracleReport {
            stage: "cuts3".into(),
            mismatches: mism,
        });
    }

    reports
}
