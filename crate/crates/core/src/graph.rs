//! Immutable edge-indexed undirected multigraph.
//!
//! Parallel edges are first-class; self-loops are accepted at ingestion and
//! stripped by [`strip_self_loops`] before any cut computation. Edge ids are
//! dense `0..m` and stable across every derived structure.

use serde::Serialize;

use crate::error::Error;
use crate::Result;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    /// Flat adjacency: entries for vertex v live in adj[start[v]..start[v+1]]
    /// as (neighbor, edge id); every non-loop edge appears once per endpoint,
    /// every self-loop twice at its vertex. Within a vertex, entries are in
    /// edge-id order. Half-width on purpose: this is the most random-accessed
    /// array in the crate, so vertex and edge counts are capped at u32.
    adj: Vec<(u32, u32)>,
    start: Vec<usize>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {i} = ({u}, {v}) has an endpoint >= n = {n}"
                )));
            }
        }
        if n >= u32::MAX as usize || edges.len() >= u32::MAX as usize {
            return Err(Error::InvalidArgument(
                "vertex and edge counts are capped at u32".into(),
            ));
        }
        let mut start = vec![0usize; n + 1];
        for &(u, v) in &edges {
            start[u + 1] += 1;
            start[v + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
        let mut fill = start.clone();
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[fill[u]] = (v as u32, id as u32);
            fill[u] += 1;
            adj[fill[v]] = (u as u32, id as u32);
            fill[v] += 1;
        }
        Ok(Multigraph { n, edges, adj, start })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn adj(&self, v: VertexId) -> &[(u32, u32)] {
        &self.adj[self.start[v]..self.start[v + 1]]
    }

    pub fn is_self_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.start[v + 1] - self.start[v]
    }

    /// Renames vertices by a permutation (`perm[old] = new`), keeping edge ids.
    /// The new adjacency is written sequentially by permuting the old CSR
    /// blocks, which is much cheaper at scale than rebuilding from the edge
    /// list's scattered endpoint order.
    pub fn relabel(&self, perm: &[u32]) -> Multigraph {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let edges: Vec<(VertexId, VertexId)> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u] as usize, perm[v] as usize))
            .collect();
        let mut start = vec![0usize; n + 1];
        for old in 0..n {
            start[perm[old] as usize + 1] = self.degree(old);
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut adj = vec![(0u32, 0u32); self.adj.len()];
        let mut inv = vec![0u32; n];
        for old in 0..n {
            inv[perm[old] as usize] = old as u32;
        }
        for new in 0..n {
            let old = inv[new] as usize;
            let dst = &mut adj[start[new]..start[new + 1]];
            for (slot, &(w, e)) in dst.iter_mut().zip(self.adj(old)) {
                *slot = (perm[w as usize], e);
            }
        }
        Multigraph { n, edges, adj, start }
    }

    /// Parses the edge-list format: first line `n m`, then `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty input, expected header line \"n m\""))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .ok_or_else(|| parse_err(1, "missing vertex count"))?
            .parse()
            .map_err(|_| parse_err(1, "vertex count is not a non-negative integer"))?;
        let m: usize = it
            .next()
            .ok_or_else(|| parse_err(1, "missing edge count"))?
            .parse()
            .map_err(|_| parse_err(1, "edge count is not a non-negative integer"))?;
        if it.next().is_some() {
            return Err(parse_err(1, "trailing tokens after \"n m\""));
        }

        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if edges.len() == m {
                return Err(parse_err(line_no, "more edge lines than declared"));
            }
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .ok_or_else(|| parse_err(line_no, "missing endpoint"))?
                .parse()
                .map_err(|_| parse_err(line_no, "endpoint is not a non-negative integer"))?;
            let v: usize = it
                .next()
                .ok_or_else(|| parse_err(line_no, "missing second endpoint"))?
                .parse()
                .map_err(|_| parse_err(line_no, "endpoint is not a non-negative integer"))?;
            if it.next().is_some() {
                return Err(parse_err(line_no, "trailing tokens after \"u v\""));
            }
            if u >= n || v >= n {
                return Err(parse_err(line_no, &format!("vertex id >= n = {n}")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(parse_err(
                0,
                &format!("declared {m} edges but found {}", edges.len()),
            ));
        }
        Multigraph::new(n, edges)
    }

    /// Serializes back into the edge-list format accepted by [`Multigraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// JSON emission `{n, m, edges}` for tooling.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "m": self.edges.len(),
            "edges": self.edges,
        })
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

/// Vertex partition with dense labels `0..class_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labeling {
    pub label: Vec<usize>,
    pub class_count: usize,
}

impl Labeling {
    /// Renumbers arbitrary per-vertex class keys into dense labels ordered by
    /// each class's minimum vertex id.
    pub fn from_keys(keys: &[usize]) -> Self {
        let mut map = vec![usize::MAX; keys.len().max(keys.iter().map(|k| k + 1).max().unwrap_or(0))];
        let mut label = Vec::with_capacity(keys.len());
        let mut next = 0;
        for &k in keys {
            if map[k] == usize::MAX {
                map[k] = next;
                next += 1;
            }
            label.push(map[k]);
        }
        Labeling {
            label,
            class_count: next,
        }
    }

    /// Classes as sorted vertex lists, ordered by label (= by minimum vertex).
    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (v, &l) in self.label.iter().enumerate() {
            out[l].push(v);
        }
        out
    }

    pub fn same_class(&self, u: VertexId, v: VertexId) -> bool {
        self.label[u] == self.label[v]
    }

    /// True if `self` splits every class of `coarser` (never merges across it).
    pub fn refines(&self, coarser: &Labeling) -> bool {
        let mut seen = vec![usize::MAX; self.class_count];
        for v in 0..self.label.len() {
            let fine = self.label[v];
            if seen[fine] == usize::MAX {
                seen[fine] = coarser.label[v];
            } else if seen[fine] != coarser.label[v] {
                return false;
            }
        }
        true
    }
}

/// Removes self-loops; returns the cleaned graph and a map from new edge ids
/// back to the original ones.
pub fn strip_self_loops(g: &Multigraph) -> (Multigraph, Vec<EdgeId>) {
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut id_map = Vec::with_capacity(g.edge_count());
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            edges.push((u, v));
            id_map.push(id);
        }
    }
    let stripped = Multigraph::new(g.vertex_count(), edges).expect("endpoints already validated");
    (stripped, id_map)
}

/// Connectivity classes via BFS.
pub fn connected_components(g: &Multigraph) -> Labeling {
    let n = g.vertex_count();
    let mut key = vec![usize::MAX; n];
    let mut queue = Vec::new();
    let mut next = 0;
    for s in 0..n {
        if key[s] != usize::MAX {
            continue;
        }
        key[s] = next;
        queue.push(s);
        while let Some(u) = queue.pop() {
            for &(w, _) in g.adj(u) {
                let w = w as usize;
                if key[w] == usize::MAX {
                    key[w] = next;
                    queue.push(w);
                }
            }
        }
        next += 1;
    }
    Labeling {
        label: key,
        class_count: next,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triple_edge() {
        let g = Multigraph::parse("2 3\n0 1\n0 1\n0 1").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(g.adj(0).len(), 3);
    }

    #[test]
    fn parse_single_vertex() {
        let g = Multigraph::parse("1 0").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_k4() {
        let g = Multigraph::parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.endpoints(3), (1, 2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Multigraph::parse("2 1\n0 5") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Multigraph::parse("2 1\n0") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Multigraph::parse("x 1\n0 1").is_err());
    }

    #[test]
    fn strip_loops() {
        // one loop at 1 plus edge (0,1)
        let g = Multigraph::new(2, vec![(1, 1), (0, 1)]).unwrap();
        let (s, map) = strip_self_loops(&g);
        assert_eq!(s.edges(), &[(0, 1)]);
        assert_eq!(map, vec![1]);

        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let (s, map) = strip_self_loops(&g);
        assert_eq!(s.edges(), g.edges());
        assert_eq!(map, vec![0]);

        let g = Multigraph::new(2, vec![(0, 0), (1, 1)]).unwrap();
        let (s, _) = strip_self_loops(&g);
        assert_eq!(s.edge_count(), 0);
    }

    #[test]
    fn components_basic() {
        let k4 = Multigraph::parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        assert_eq!(connected_components(&k4).class_count, 1);

        let two_triangles =
            Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let l = connected_components(&two_triangles);
        assert_eq!(l.class_count, 2);
        assert!(l.same_class(0, 2) && !l.same_class(0, 3));

        let edgeless = Multigraph::new(3, vec![]).unwrap();
        assert_eq!(connected_components(&edgeless).class_count, 3);
    }

    #[test]
    fn text_round_trip() {
        let g = Multigraph::parse("4 5\n0 1\n0 1\n2 2\n1 3\n3 2").unwrap();
        let g2 = Multigraph::parse(&g.to_text()).unwrap();
        assert_eq!(g.edges(), g2.edges());
        assert_eq!(g.vertex_count(), g2.vertex_count());
    }
}
