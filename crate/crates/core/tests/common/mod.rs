//! Shared corpus builders for the integration suites. Everything is seeded,
//! so every run sees the same instances.

use fourecc::graph::connected_components;
use fourecc::hashing::SplitMix64;
use fourecc::oracle::is_three_edge_connected;
use fourecc::Multigraph;

/// Every connected simple graph on exactly n labeled vertices.
pub fn connected_simple_graphs(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Multigraph::new(n, edges).unwrap();
        if connected_components(&g).class_count == 1 {
            out.push(g);
        }
    }
    out
}

/// A small multigraph with arbitrary shape: self-loops, parallel edges, and
/// disconnected pieces all allowed. n in 2..=8, m in 0..=16.
pub fn random_multigraph(rng: &mut SplitMix64) -> Multigraph {
    let n = 2 + rng.next_below(7) as usize;
    let m = rng.next_below(17) as usize;
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            (
                rng.next_below(n as u64) as usize,
                rng.next_below(n as u64) as usize,
            )
        })
        .collect();
    Multigraph::new(n, edges).unwrap()
}

/// Seeded 3-edge-connected multigraphs (oracle-validated), n in 2..=8.
/// Built as a random Hamiltonian cycle plus random chords and kept only if
/// the exhaustive scan confirms 3-edge-connectivity.
pub fn three_ecc_corpus(count: usize, seed: u64) -> Vec<Multigraph> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = 2 + rng.next_below(7) as usize;
        let extra = n.div_ceil(2) + rng.next_below(5) as usize;
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.next_below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        let mut edges: Vec<(usize, usize)> = (0..n)
            .map(|i| (perm[i], perm[(i + 1) % n]))
            .collect();
        if n == 2 {
            edges.truncate(1); // both cycle edges are the same pair
        }
        for _ in 0..extra {
            let u = rng.next_below(n as u64) as usize;
            let mut v = rng.next_below(n as u64) as usize;
            if u == v {
                v = (v + 1) % n;
            }
            edges.push((u, v));
        }
        let g = Multigraph::new(n, edges).unwrap();
        if is_three_edge_connected(&g) {
            out.push(g);
        }
    }
    out
}
