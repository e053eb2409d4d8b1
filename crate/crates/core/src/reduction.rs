//! Reduction of the general problem to 3-edge-connected instances: split off
//! bridges and 2-edge-connected blocks, group the 2-edge-cuts into the cactus
//! of cycles, synthesize one 3-edge-connected auxiliary graph per
//! 3-edge-connectivity class (with a special edge closing each incident
//! cycle), run the cut pipeline on each, and merge the labels.

use crate::cuts::{enumerate_3cuts_with_stats, Mode};
use crate::cuttree::{build_cut_tree, four_ecc_from_tree, part_sizes};
use crate::dfs::build_dfs;
use crate::error::Error;
use crate::graph::{strip_self_loops, EdgeId, Labeling, Multigraph, VertexId};
use crate::hashing::{assign_compressed_hashes, radix_sort_pairs, SplitMix64};
use crate::Result;

/// Bridges and 2-edge-connected classes of an arbitrary loop-free multigraph
/// (disconnected inputs allowed). A parallel edge to the parent counts as a
/// back edge; only the exact tree edge is skipped.
pub fn two_ecc_split(g: &Multigraph) -> (Vec<EdgeId>, Labeling) {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut skipped = vec![false; n];
    let mut bridges = Vec::new();
    let mut clock = 0usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();

    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = clock;
        low[s] = clock;
        clock += 1;
        stack.push((s, 0));
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if let Some(&(w, e)) = g.adj(v).get(*idx) {
                *idx += 1;
                let (w, e) = (w as usize, e as usize);
                if w == v {
                    continue; // self-loop
                }
                if e == parent_edge[v] && !skipped[v] {
                    skipped[v] = true;
                    continue;
                }
                if disc[w] == usize::MAX {
                    parent_edge[w] = e;
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    if low[v] > disc[p] {
                        bridges.push(parent_edge[v]);
                    }
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    bridges.sort_unstable();

    let mut is_bridge = vec![false; m];
    for &b in &bridges {
        is_bridge[b] = true;
    }
    let mut key = vec![usize::MAX; n];
    let mut next = 0usize;
    let mut queue = Vec::new();
    for s in 0..n {
        if key[s] != usize::MAX {
            continue;
        }
        key[s] = next;
        queue.push(s);
        while let Some(u) = queue.pop() {
            for &(w, e) in g.adj(u) {
                let (w, e) = (w as usize, e as usize);
                if !is_bridge[e] && key[w] == usize::MAX {
                    key[w] = next;
                    queue.push(w);
                }
            }
        }
        next += 1;
    }
    (
        bridges,
        Labeling {
            label: key,
            class_count: next,
        },
    )
}

const THREE_ECC_SEED: u64 = 0x7e3e_cc00_5eed_cafe;

/// 3-edge-connectivity classes of a connected, loop-free, 2-edge-connected
/// multigraph. Monte Carlo with internal consistency checks; on a suspected
/// hash collision the computation is retried with fresh randomness.
pub fn three_ecc_components(g2: &Multigraph) -> Result<Labeling> {
    let mut rng = SplitMix64::new(THREE_ECC_SEED);
    let mut last = None;
    for _ in 0..8 {
        match three_ecc_with_seed(g2, rng.next_u64()) {
            Err(e @ Error::HashCollision(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap())
}

/// One seeded attempt of [`three_ecc_components`].
///
/// Two edges form a 2-edge-cut exactly when their compressed hashes are equal
/// (with high probability), so equal-hash groups are the cycles of the cactus
/// of 2-cuts. Each group's tree edges form an ancestor chain cutting the
/// vertex set into segments along the root path; two vertices share a
/// 3-edge-connectivity class iff they share a segment of every group, which
/// is read off by xoring one random word per (group, segment) into a
/// per-vertex signature.
pub fn three_ecc_with_seed(g2: &Multigraph, seed: u64) -> Result<Labeling> {
    let n = g2.vertex_count();
    let m = g2.edge_count();
    if n <= 1 {
        return Ok(Labeling {
            label: vec![0; n],
            class_count: n,
        });
    }
    let dfs = build_dfs(g2, 0)?;
    let hashes = assign_compressed_hashes(g2, &dfs, seed);

    let mut pairs: Vec<(u64, usize)> = (0..m).map(|e| (hashes.ch[e], e)).collect();
    radix_sort_pairs(&mut pairs);

    // delta[v]: signature change across the tree edge above v
    let mut delta = vec![0u64; n];
    let mut val_rng = SplitMix64::new(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut i = 0;
    while i < m {
        let mut j = i;
        while j < m && pairs[j].0 == pairs[i].0 {
            j += 1;
        }
        let group: Vec<usize> = pairs[i..j].iter().map(|&(_, e)| e).collect();
        i = j;
        let k = group.len();
        if k < 2 {
            continue;
        }
        let mut chain: Vec<usize> = group
            .iter()
            .copied()
            .filter(|&e| dfs.is_tree_edge(e))
            .collect();
        if k - chain.len() > 1 {
            return Err(Error::HashCollision(format!(
                "back edges sharing hash {:#x} cannot form 2-edge-cuts",
                pairs[i - 1].0
            )));
        }
        chain.sort_by_key(|&e| dfs.depth[dfs.head[e] as usize]);
        for w in chain.windows(2) {
            if !dfs.is_ancestor(dfs.head[w[0]] as usize, dfs.head[w[1]] as usize) {
                return Err(Error::HashCollision(format!(
                    "tree edges {} and {} share a hash but are not nested",
                    w[0], w[1]
                )));
            }
        }
        // crossing the (p+1)-th chain edge moves a vertex from segment p to
        // p+1; segment k wraps to 0 when the whole cycle is made of tree edges
        let vals: Vec<u64> = (0..k).map(|_| val_rng.next_u64()).collect();
        for (p, &e) in chain.iter().enumerate() {
            delta[dfs.head[e] as usize] ^= vals[p] ^ vals[(p + 1) % k];
        }
    }

    let mut sig = vec![0u64; n];
    for &v in &dfs.order[1..] {
        let v = v as usize;
        sig[v] = sig[dfs.parent[v] as usize] ^ delta[v];
    }
    let mut sv: Vec<(u64, usize)> = (0..n).map(|v| (sig[v], v)).collect();
    radix_sort_pairs(&mut sv);
    let mut key = vec![0usize; n];
    let mut cls = 0usize;
    for idx in 0..n {
        if idx > 0 && sv[idx].0 != sv[idx - 1].0 {
            cls += 1;
        }
        key[sv[idx].1] = cls;
    }
    Ok(Labeling::from_keys(&key))
}

/// Quotient of a 2-edge-connected graph by its 3-edge-connectivity classes:
/// every surviving edge lies on exactly one simple cycle, and two original
/// edges form a 2-edge-cut iff their images share a cycle.
#[derive(Debug, Clone)]
pub struct CactusOf2Cuts {
    pub quotient: Multigraph,
    /// Originating edge of g2 per quotient edge.
    pub edge_origin: Vec<EdgeId>,
    /// Cycle id per quotient edge.
    pub cycle_id: Vec<usize>,
    pub cycle_count: usize,
}

pub fn build_cactus(g2: &Multigraph, labels3: &Labeling) -> Result<CactusOf2Cuts> {
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (e, &(u, v)) in g2.edges().iter().enumerate() {
        let (a, b) = (labels3.label[u], labels3.label[v]);
        if a != b {
            edges.push((a, b));
            edge_origin.push(e);
        }
    }
    let quotient = Multigraph::new(labels3.class_count, edges)?;
    if quotient.vertex_count() <= 1 {
        return Ok(CactusOf2Cuts {
            quotient,
            edge_origin,
            cycle_id: Vec::new(),
            cycle_count: 0,
        });
    }

    // every cycle is a fundamental cycle of the quotient's DFS tree, and the
    // cycles are edge-disjoint; anything else means the labels were wrong
    let dfs = build_dfs(&quotient, 0)?;
    let mut cycle_id = vec![usize::MAX; quotient.edge_count()];
    let mut cycle_count = 0usize;
    for b in dfs.back_edges() {
        let cid = cycle_count;
        cycle_count += 1;
        cycle_id[b] = cid;
        let mut x = dfs.tail[b] as usize;
        while x != dfs.head[b] as usize {
            let e = dfs.tree_edge_above(x);
            if cycle_id[e] != usize::MAX {
                return Err(Error::InvalidLabels(format!(
                    "quotient edge {e} lies on two cycles"
                )));
            }
            cycle_id[e] = cid;
            x = dfs.parent[x] as usize;
        }
    }
    if let Some(e) = cycle_id.iter().position(|&c| c == usize::MAX) {
        return Err(Error::InvalidLabels(format!(
            "quotient edge {e} lies on no cycle"
        )));
    }
    Ok(CactusOf2Cuts {
        quotient,
        edge_origin,
        cycle_id,
        cycle_count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeProvenance {
    Original(EdgeId),
    Special { cycle: usize },
}

/// One 3-edge-connected instance per 3-edge-connectivity class X: the induced
/// edges of X plus one special edge per cycle of the cactus incident to X,
/// joining the two X-side endpoints where the cycle enters and leaves.
#[derive(Debug, Clone)]
pub struct AuxGraph {
    /// Vertices of the class, as ids of the graph the pipeline was given,
    /// ascending; local id = position.
    pub vertices: Vec<VertexId>,
    pub graph: Multigraph,
    pub provenance: Vec<EdgeProvenance>,
}

pub fn build_aux_graphs(
    g2: &Multigraph,
    labels3: &Labeling,
    cactus: &CactusOf2Cuts,
) -> Vec<AuxGraph> {
    let classes = labels3.classes();
    let mut local = vec![usize::MAX; g2.vertex_count()];
    for class in &classes {
        for (i, &v) in class.iter().enumerate() {
            local[v] = i;
        }
    }

    let mut edge_lists: Vec<Vec<(usize, usize)>> = vec![Vec::new(); classes.len()];
    let mut prov: Vec<Vec<EdgeProvenance>> = vec![Vec::new(); classes.len()];
    for (e, &(u, v)) in g2.edges().iter().enumerate() {
        let c = labels3.label[u];
        if c == labels3.label[v] {
            edge_lists[c].push((local[u], local[v]));
            prov[c].push(EdgeProvenance::Original(e));
        }
    }

    // (class, cycle, entry endpoint) per quotient edge endpoint; a simple
    // cycle meets a class at exactly two quotient-edge endpoints
    let mut touch: Vec<(usize, usize, usize)> = Vec::with_capacity(2 * cactus.edge_origin.len());
    for (qe, &orig) in cactus.edge_origin.iter().enumerate() {
        let (u, v) = g2.endpoints(orig);
        touch.push((labels3.label[u], cactus.cycle_id[qe], local[u]));
        touch.push((labels3.label[v], cactus.cycle_id[qe], local[v]));
    }
    touch.sort_unstable();
    let mut i = 0;
    while i < touch.len() {
        let (class, cycle, a) = touch[i];
        debug_assert!(
            i + 1 < touch.len() && touch[i + 1].0 == class && touch[i + 1].1 == cycle,
            "cycle {cycle} meets class {class} at one endpoint"
        );
        let b = touch[i + 1].2;
        i += 2;
        if a != b {
            edge_lists[class].push((a, b));
            prov[class].push(EdgeProvenance::Special { cycle });
        }
    }

    classes
        .into_iter()
        .zip(edge_lists.into_iter().zip(prov))
        .map(|(vertices, (edges, provenance))| AuxGraph {
            graph: Multigraph::new(vertices.len(), edges).expect("local ids are dense"),
            vertices,
            provenance,
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    pub mode: Mode,
    /// Re-verify every cut candidate against its level graph.
    pub paranoid: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            mode: Mode::Deterministic,
            paranoid: false,
        }
    }
}

/// 4-edge-connected components of an arbitrary multigraph (self-loops,
/// parallel edges, and disconnected inputs allowed). Labels are dense and
/// ordered by each class's smallest vertex.
pub fn four_ecc(g: &Multigraph) -> Result<Labeling> {
    four_ecc_with(g, PipelineConfig::default())
}

pub fn four_ecc_with(g: &Multigraph, cfg: PipelineConfig) -> Result<Labeling> {
    let n = g.vertex_count();
    let (clean, _) = strip_self_loops(g);
    let mut key = vec![usize::MAX; n];
    let mut next = 0usize;

    let (_bridges, blocks) = two_ecc_split(&clean);
    for block in blocks.classes() {
        if block.len() == 1 {
            key[block[0]] = next;
            next += 1;
            continue;
        }
        let sub = induced(&clean, &block);
        let labels3 = three_ecc_components(&sub)?;
        let cactus = build_cactus(&sub, &labels3)?;
        for aux in build_aux_graphs(&sub, &labels3, &cactus) {
            if aux.graph.vertex_count() == 1 {
                key[block[aux.vertices[0]]] = next;
                next += 1;
                continue;
            }
            let (cuts, _) = enumerate_3cuts_with_stats(&aux.graph, cfg.mode, cfg.paranoid)?;
            let dfs = build_dfs(&aux.graph, 0)?;
            let sizes = part_sizes(&dfs, &cuts)?;
            let tree = build_cut_tree(&dfs, &cuts, &sizes)?;
            let local = four_ecc_from_tree(&tree);
            let mut remap = vec![usize::MAX; local.class_count];
            for (i, &sv) in aux.vertices.iter().enumerate() {
                let c = local.label[i];
                if remap[c] == usize::MAX {
                    remap[c] = next;
                    next += 1;
                }
                key[block[sv]] = remap[c];
            }
        }
    }
    debug_assert!(key.iter().all(|&k| k != usize::MAX));
    Ok(Labeling::from_keys(&key))
}

fn induced(g: &Multigraph, vertices: &[VertexId]) -> Multigraph {
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
        .map(|&(u, v)| (local[u], local[v]))
        .collect();
    Multigraph::new(vertices.len(), edges).expect("local ids are dense")
}
