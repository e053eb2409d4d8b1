//! Compressed 64-bit xor-hashes of edges and the offline sorted join used in
//! place of hash-table lookups.
//!
//! Back edges get independent pseudorandom words; a tree edge's hash is the
//! xor over the back edges leaping it. The three edges of a genuine 3-edge-cut
//! then xor to zero exactly, and a spurious zero xor is a Monte Carlo event
//! with probability about 2^-64 per candidate.

use crate::dfs::DfsStructure;
use crate::graph::{EdgeId, Multigraph};

/// Seeded splittable 64-bit mixer; full period over the state increment.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from 0..bound.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        // rejection-free modulo is fine here: bias is < 2^-32 for desk-scale bounds
        self.next_u64() % bound
    }
}

#[derive(Debug, Clone)]
pub struct CompressedHashes {
    /// Per-edge 64-bit hash, indexed by EdgeId.
    pub ch: Vec<u64>,
    pub seed: u64,
}

/// Draws back-edge hashes in edge-id order, then fills tree-edge hashes in one
/// bottom-up pass: S(v) = xor of the hashes of all back edges with an endpoint
/// occurrence at T_v. Back edges internal to T_v contribute twice and cancel,
/// leaving exactly the leaping set for the edge above v.
pub fn assign_compressed_hashes(g: &Multigraph, dfs: &DfsStructure, seed: u64) -> CompressedHashes {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut rng = SplitMix64::new(seed);
    let mut ch = vec![0u64; m];
    for e in 0..m {
        if !dfs.is_tree_edge(e) {
            ch[e] = rng.next_u64();
        }
    }

    let mut acc = vec![0u64; n];
    for v in 0..n {
        for &(_, e) in g.adj(v) {
            let e = e as usize;
            if !dfs.is_tree_edge(e) {
                acc[v] ^= ch[e];
            }
        }
    }
    for &v in dfs.order.iter().rev() {
        let v = v as usize;
        if let Some(p) = dfs.parent_of(v) {
            ch[dfs.tree_edge_above(v)] = acc[v];
            acc[p] ^= acc[v];
        }
    }
    CompressedHashes { ch, seed }
}

/// Sorts (key, payload) pairs; payloads are assumed distinct, so the result
/// is a total deterministic order equal to a stable sort by key. One MSD
/// scatter into top-bit buckets followed by in-cache per-bucket sorts beats
/// multi-pass LSB radix here: the keys are uniform hashes, and a single pass
/// over the data is all the out-of-cache traffic the sort pays.
pub fn radix_sort_pairs(items: &mut Vec<(u64, usize)>) {
    if items.len() < 1 << 12 {
        items.sort_unstable();
        return;
    }
    const BITS: u32 = 13;
    let shift = 64 - BITS;
    let mut count = vec![0usize; (1 << BITS) + 1];
    for &(key, _) in items.iter() {
        count[(key >> shift) as usize + 1] += 1;
    }
    for i in 0..1usize << BITS {
        count[i + 1] += count[i];
    }
    let mut scratch = vec![(0u64, 0usize); items.len()];
    let mut fill = count.clone();
    for &(key, pay) in items.iter() {
        let b = (key >> shift) as usize;
        scratch[fill[b]] = (key, pay);
        fill[b] += 1;
    }
    for b in 0..1usize << BITS {
        scratch[count[b]..count[b + 1]].sort_unstable();
    }
    *items = scratch;
}

/// Sentinel in [`offline_membership_ids`] answers: no key matched the query.
pub const NO_MATCH: u32 = u32::MAX;

/// Answers every query against the key multiset by a sorted join. Duplicate
/// keys resolve to the smallest edge id; absent keys yield None.
pub fn offline_membership(queries: &[u64], keys: &[(u64, EdgeId)]) -> Vec<Option<EdgeId>> {
    offline_membership_ids(queries, keys)
        .into_iter()
        .map(|id| (id != NO_MATCH).then_some(id as EdgeId))
        .collect()
}

/// [`offline_membership`] with a half-width answer array ([`NO_MATCH`] for
/// absent keys); the answers are the bulk of the pass's memory traffic.
pub fn offline_membership_ids(queries: &[u64], keys: &[(u64, EdgeId)]) -> Vec<u32> {
    membership_ids_sorted(queries, keys.to_vec())
}

/// [`offline_membership_ids`] where the key multiset is `keys[i]` with id i,
/// sparing the caller (and this pass) a keys-with-ids copy.
pub fn offline_membership_by_index(queries: &[u64], keys: &[u64]) -> Vec<u32> {
    membership_ids_sorted(queries, keys.iter().copied().zip(0..).collect())
}

fn membership_ids_sorted(queries: &[u64], mut sorted_keys: Vec<(u64, usize)>) -> Vec<u32> {
    radix_sort_pairs(&mut sorted_keys);
    // collapse duplicates to the minimum id
    let mut collapsed: Vec<(u64, usize)> = Vec::with_capacity(sorted_keys.len());
    for &(key, id) in &sorted_keys {
        match collapsed.last_mut() {
            Some(last) if last.0 == key => last.1 = last.1.min(id),
            _ => collapsed.push((key, id)),
        }
    }

    let mut sorted_queries: Vec<(u64, usize)> =
        queries.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    radix_sort_pairs(&mut sorted_queries);

    let mut out = vec![NO_MATCH; queries.len()];
    let mut j = 0usize;
    for &(q, qi) in &sorted_queries {
        while j < collapsed.len() && collapsed[j].0 < q {
            j += 1;
        }
        if j < collapsed.len() && collapsed[j].0 == q {
            out[qi] = collapsed[j].1 as u32;
        }
    }
    out
}
