//! Seeded graph families for tests and benchmarks.

use crate::graph::Multigraph;
use crate::hashing::SplitMix64;

fn random_permutation(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        p.swap(i, j);
    }
    p
}

/// Union of three seeded Hamiltonian cycles; m = 3n, parallel edges allowed.
/// 3-edge-connected with high probability for n >= 2.
pub fn three_cycles(n: usize, seed: u64) -> Multigraph {
    assert!(n >= 2);
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(3 * n);
    for _ in 0..3 {
        let p = random_permutation(n, &mut rng);
        for i in 0..n {
            edges.push((p[i], p[(i + 1) % n]));
        }
    }
    Multigraph::new(n, edges).unwrap()
}

/// Chain of n/4 complete blocks on 4 vertices, consecutive blocks joined by a
/// 3-edge bundle; m = 9(n/4) - 3. Deterministically 3-edge-connected and rich
/// in 3-edge-cuts (every bundle is one).
pub fn k4_chain(n: usize) -> Multigraph {
    assert!(n >= 4 && n % 4 == 0, "vertex count must be a positive multiple of 4");
    let b = n / 4;
    let mut edges = Vec::with_capacity(9 * b - 3);
    for i in 0..b {
        let base = 4 * i;
        for u in 0..4 {
            for v in (u + 1)..4 {
                edges.push((base + u, base + v));
            }
        }
    }
    for i in 0..b - 1 {
        for j in 0..3 {
            edges.push((4 * i + j, 4 * (i + 1) + j));
        }
    }
    Multigraph::new(n, edges).unwrap()
}

/// Configuration-model d-regular multigraph: d stubs per vertex, matched by a
/// random shuffle. May contain self-loops and parallel edges; n*d must be even.
pub fn random_multi(n: usize, d: usize, seed: u64) -> Multigraph {
    assert!(n * d % 2 == 0, "n*d must be even");
    let mut rng = SplitMix64::new(seed);
    let mut stubs: Vec<usize> = (0..n * d).map(|i| i / d).collect();
    for i in (1..stubs.len()).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        stubs.swap(i, j);
    }
    let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
    Multigraph::new(n, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycles_shape() {
        let g = three_cycles(4, 1);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 12);
        for v in 0..4 {
            assert_eq!(g.degree(v), 6);
        }
        // determinism
        assert_eq!(g.edges(), three_cycles(4, 1).edges());
        assert_ne!(three_cycles(6, 1).edges(), three_cycles(6, 2).edges());
    }

    #[test]
    fn k4_chain_shape() {
        let g = k4_chain(8);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.edges()[12..], [(0, 4), (1, 5), (2, 6)]);
        let g = k4_chain(4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn random_multi_shape() {
        let g = random_multi(10, 4, 7);
        assert_eq!(g.edge_count(), 20);
        for v in 0..10 {
            assert_eq!(g.degree(v), 4);
        }
        assert_eq!(g.edges(), random_multi(10, 4, 7).edges());
    }
}
