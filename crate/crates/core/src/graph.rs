//! Undirected graphs on 0-based labels with bitset adjacency rows.
//!
//! Graph values are immutable: every operation returns a fresh graph. All
//! binary operations follow the same labeling convention: the first operand
//! keeps its labels and the second operand's labels are shifted up behind it.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported order; adjacency rows are single machine words.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("label {label} out of range for order {order}")]
    LabelOutOfRange { label: usize, order: usize },
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("self-loop at {0}")]
    SelfLoop(usize),
}

/// Simple undirected graph; vertex labels are `0..order()`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        Graph { n, rows: vec![0; n] }
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// The path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.set_edge(u - 1, u);
        }
        g
    }

    /// The cycle `0 - 1 - ... - n-1 - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.set_edge(0, n - 1);
        g
    }

    /// Builds a graph from an edge list; rejects bad labels and self-loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::LabelOutOfRange { label: u, order: n });
            }
            if v >= n {
                return Err(GraphError::LabelOutOfRange { label: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// A seeded Erdos-Renyi style draw: each pair becomes an edge with
    /// probability `density`.
    pub fn random<R: Rng>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(density) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & (1 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    /// Adjacency row of `v` as a bitset over labels.
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.rows[v];
        (0..self.n).filter(move |u| row & (1 << u) != 0)
    }

    /// All edges as normalized pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The graph with every adjacency flipped.
    pub fn complement(&self) -> Self {
        let full = mask_below(self.n);
        let rows = (0..self.n)
            .map(|v| !self.rows[v] & full & !(1u64 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    /// Disjoint union; the right operand's labels are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n = self.n + other.n;
        assert!(n <= MAX_ORDER, "union order {n} exceeds {MAX_ORDER}");
        let mut rows = Vec::with_capacity(n);
        rows.extend_from_slice(&self.rows);
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Graph { n, rows }
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Self {
        let mut g = self.disjoint_union(other);
        let left = mask_below(self.n);
        let right = mask_below(g.n) & !left;
        for v in 0..self.n {
            g.rows[v] |= right;
        }
        for v in self.n..g.n {
            g.rows[v] |= left;
        }
        g
    }

    /// Glues `other` onto `self` by identifying `other`'s vertex `v2` with
    /// `self`'s vertex `v1`. Remaining right-hand vertices keep their relative
    /// order and are shifted behind `self`'s labels.
    pub fn glue(&self, v1: usize, other: &Graph, v2: usize) -> Result<Self, GraphError> {
        if v1 >= self.n {
            return Err(GraphError::LabelOutOfRange { label: v1, order: self.n });
        }
        if v2 >= other.n {
            return Err(GraphError::LabelOutOfRange { label: v2, order: other.n });
        }
        let n = self.n + other.n - 1;
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let relabel = |w: usize| -> usize {
            if w == v2 {
                v1
            } else if w < v2 {
                self.n + w
            } else {
                self.n + w - 1
            }
        };
        let mut g = Graph::empty(n);
        g.rows[..self.n].copy_from_slice(&self.rows);
        for (u, v) in other.edges() {
            g.set_edge(relabel(u), relabel(v));
        }
        Ok(g)
    }

    /// Induced subgraph on `labels`; vertex `i` of the result is `labels[i]`.
    /// CAUTION: `labels` must be strictly increasing for the relabeling to be
    /// order-preserving.
    pub fn induced(&self, labels: &[usize]) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(labels.iter().all(|&v| v < self.n));
        let k = labels.len();
        let mut g = Graph::empty(k);
        for i in 0..k {
            for j in (i + 1)..k {
                if self.has_edge(labels[i], labels[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// The graph with one edge removed; no-op if the edge is absent.
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.rows[u] &= !(1u64 << v);
            g.rows[v] &= !(1u64 << u);
        }
        g
    }

    /// The graph with a set of edges removed.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Self {
        let mut g = self.clone();
        for &(u, v) in edges {
            if g.has_edge(u, v) {
                g.rows[u] &= !(1u64 << v);
                g.rows[v] &= !(1u64 << u);
            }
        }
        g
    }

    /// Vertices with no neighbors.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.rows[v] == 0).collect()
    }

    /// Vertices adjacent to everything else.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let full = mask_below(self.n);
        (0..self.n)
            .filter(|&v| self.rows[v] == full & !(1u64 << v))
            .collect()
    }

    /// Size of a largest clique. Branch-free brute force; desk scale only.
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        // DFS over cliques: extend the current clique by vertices above its
        // maximum that are adjacent to all of it.
        fn grow(g: &Graph, clique_size: usize, candidates: u64, best: &mut usize) {
            *best = (*best).max(clique_size);
            let mut cand = candidates;
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                grow(g, clique_size + 1, cand & g.rows[v], best);
            }
        }
        grow(self, 0, mask_below(self.n), &mut best);
        best
    }

    /// Connected components as sorted label lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut comp = 1u64 << start;
            loop {
                let mut grown = comp;
                let mut scan = comp;
                while scan != 0 {
                    let v = scan.trailing_zeros() as usize;
                    scan &= scan - 1;
                    grown |= self.rows[v];
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(bits_to_labels(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Maximal join factors: the parts are exactly the connected components of
    /// the complement. A graph is a join of its parts taken in this order.
    pub fn join_decomposition(&self) -> Vec<Vec<usize>> {
        self.complement().connected_components()
    }

    /// Degree sequence sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Bitmask with the lowest `n` bits set.
pub fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Expands a bitset into its sorted list of labels.
pub fn bits_to_labels(bits: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    let mut b = bits;
    while b != 0 {
        out.push(b.trailing_zeros() as usize);
        b &= b - 1;
    }
    out
}
