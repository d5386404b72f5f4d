//! Induced-subgraph detection, canonical forms, and exhaustive enumeration.
//!
//! Detection comes in two flavors: [`contains_induced`] answers the boolean
//! question quickly, while [`find_induced`] returns the *canonical* embedding
//! (smallest image vertex set in lexicographic order, then smallest mapping).
//! All deterministic machinery downstream relies on that canonical choice.

use crate::graph::{mask_below, Graph};
use itertools::Itertools;
use thiserror::Error;

/// Canonical forms and enumeration are capped at this order.
pub const CANON_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("order {0} exceeds the canonical-form cap of {CANON_CAP}")]
    CapExceeded(usize),
}

/// An induced embedding of a pattern into a host graph.
///
/// `image[i]` is the host label that pattern vertex `i` maps to. The mapping
/// preserves both adjacency and non-adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMapping {
    pub image: Vec<usize>,
}

impl IsoMapping {
    /// The image as a sorted vertex set.
    pub fn image_set(&self) -> Vec<usize> {
        let mut s = self.image.clone();
        s.sort_unstable();
        s
    }

    /// Checks that the mapping is a genuine induced embedding.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.image.len() != pattern.order() {
            return false;
        }
        let mut seen = 0u64;
        for &v in &self.image {
            if v >= host.order() || seen & (1 << v) != 0 {
                return false;
            }
            seen |= 1 << v;
        }
        for i in 0..pattern.order() {
            for j in (i + 1)..pattern.order() {
                if pattern.has_edge(i, j) != host.has_edge(self.image[i], self.image[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds the canonical induced embedding of `pattern` in `host`, if any.
///
/// Candidate image sets are scanned in lexicographic order of their sorted
/// label lists; within the first feasible set the lexicographically smallest
/// mapping vector wins. Returns `None` when no embedding exists.
pub fn find_induced(pattern: &Graph, host: &Graph) -> Option<IsoMapping> {
    let k = pattern.order();
    let n = host.order();
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(IsoMapping { image: Vec::new() });
    }
    let want_degs = pattern.degree_sequence();
    for subset in (0..n).combinations(k) {
        // Degree-multiset prefilter within the candidate image.
        let mask: u64 = subset.iter().map(|&v| 1u64 << v).sum();
        let mut degs: Vec<usize> = subset
            .iter()
            .map(|&v| (host.row(v) & mask).count_ones() as usize)
            .collect();
        degs.sort_unstable();
        if degs != want_degs {
            continue;
        }
        if let Some(mapping) = smallest_mapping_onto(pattern, host, &subset) {
            let found = IsoMapping { image: mapping };
            debug_assert!(found.is_valid(pattern, host));
            return Some(found);
        }
    }
    None
}

/// Lexicographically smallest bijection of the pattern onto `subset` that is
/// an induced embedding, found by first-fit backtracking.
fn smallest_mapping_onto(pattern: &Graph, host: &Graph, subset: &[usize]) -> Option<Vec<usize>> {
    let k = pattern.order();
    let mut mapping = vec![usize::MAX; k];
    let mut used = vec![false; k];

    fn rec(
        pattern: &Graph,
        host: &Graph,
        subset: &[usize],
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == subset.len() {
            return true;
        }
        'cand: for (idx, &v) in subset.iter().enumerate() {
            if used[idx] {
                continue;
            }
            for (j, &image) in mapping.iter().enumerate().take(depth) {
                if pattern.has_edge(j, depth) != host.has_edge(image, v) {
                    continue 'cand;
                }
            }
            mapping[depth] = v;
            used[idx] = true;
            if rec(pattern, host, subset, mapping, used, depth + 1) {
                return true;
            }
            used[idx] = false;
        }
        false
    }

    if rec(pattern, host, subset, &mut mapping, &mut used, 0) {
        Some(mapping)
    } else {
        None
    }
}

/// Fast boolean check: does `host` contain an induced copy of `pattern`?
///
/// Same answer as `find_induced(..).is_some()` but via backtracking over
/// pattern vertices, which prunes far better on large hosts.
pub fn contains_induced(pattern: &Graph, host: &Graph) -> bool {
    let k = pattern.order();
    let n = host.order();
    if k > n {
        return false;
    }
    if k == 0 {
        return true;
    }
    // Place high-degree, well-connected pattern vertices first so adjacency
    // constraints bite early.
    let order = placement_order(pattern);
    let mut image = vec![usize::MAX; k];

    fn rec(
        pattern: &Graph,
        host: &Graph,
        order: &[usize],
        image: &mut Vec<usize>,
        used: u64,
        depth: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let pdeg = pattern.degree(p);
        let pcodeg = pattern.order() - 1 - pdeg;
        'cand: for v in 0..host.order() {
            if used & (1 << v) != 0 {
                continue;
            }
            if host.degree(v) < pdeg || host.order() - 1 - host.degree(v) < pcodeg {
                continue;
            }
            for &q in &order[..depth] {
                if pattern.has_edge(p, q) != host.has_edge(v, image[q]) {
                    continue 'cand;
                }
            }
            image[p] = v;
            if rec(pattern, host, order, image, used | (1 << v), depth + 1) {
                return true;
            }
        }
        false
    }

    rec(pattern, host, &order, &mut image, 0, 0)
}

/// Visit order for backtracking: start at a maximum-degree vertex, then
/// greedily take the vertex with the most already-placed neighbors.
fn placement_order(g: &Graph) -> Vec<usize> {
    let k = g.order();
    let mut order = Vec::with_capacity(k);
    let mut placed = 0u64;
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| placed & (1 << v) == 0)
            .max_by_key(|&v| {
                let anchored = (g.row(v) & placed).count_ones();
                (anchored, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    order
}

/// True iff `g` contains no member of `members` as an induced subgraph.
/// An empty member list is vacuously free.
pub fn is_free(g: &Graph, members: &[Graph]) -> bool {
    !members.iter().any(|h| contains_induced(h, g))
}

/// Canonical key of a graph: the minimum upper-triangle bit string over all
/// vertex orderings. Keys of equal-order graphs are equal iff the graphs are
/// isomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub order: usize,
    pub bits: u64,
}

/// Computes the canonical key by branch-and-bound over vertex orderings.
///
/// Pairs are laid out column-major -- placing vertex `t` appends the bits
/// toward positions `0..t` -- so partial orderings give key prefixes that can
/// be pruned against the best complete key found so far.
pub fn canonical_key(g: &Graph) -> Result<CanonicalKey, IsoError> {
    let n = g.order();
    if n > CANON_CAP {
        return Err(IsoError::CapExceeded(n));
    }
    if n <= 1 {
        return Ok(CanonicalKey { order: n, bits: 0 });
    }
    let total_bits = n * (n - 1) / 2;
    let mut best: Option<u64> = None;
    let mut perm = Vec::with_capacity(n);

    fn rec(
        g: &Graph,
        perm: &mut Vec<usize>,
        used: u64,
        partial: u64,
        partial_bits: usize,
        total_bits: usize,
        best: &mut Option<u64>,
    ) {
        let n = g.order();
        if perm.len() == n {
            if best.is_none_or(|b| partial < b) {
                *best = Some(partial);
            }
            return;
        }
        let t = perm.len();
        for w in 0..n {
            if used & (1 << w) != 0 {
                continue;
            }
            let mut key = partial;
            for &p in perm.iter() {
                key = (key << 1) | u64::from(g.has_edge(p, w));
            }
            let bits = partial_bits + t;
            if let Some(b) = *best {
                if key > b >> (total_bits - bits) {
                    continue; // prefix already beaten
                }
            }
            perm.push(w);
            rec(g, perm, used | (1 << w), key, bits, total_bits, best);
            perm.pop();
        }
    }

    rec(g, &mut perm, 0, 0, 0, total_bits, &mut best);
    Ok(CanonicalKey { order: n, bits: best.unwrap() })
}

/// Isomorphism test via canonical keys, after cheap invariant prefilters.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, IsoError> {
    if g1.order() != g2.order() || g1.size() != g2.size() {
        return Ok(false);
    }
    if g1.degree_sequence() != g2.degree_sequence() {
        return Ok(false);
    }
    Ok(canonical_key(g1)? == canonical_key(g2)?)
}

/// One representative per isomorphism class of graphs of order `n`,
/// optionally restricted to connected graphs. Deterministic: sorted by
/// canonical key.
///
/// Built by extending every class of order `n-1` with one new vertex per
/// possible neighborhood; every order-`n` graph arises this way from deleting
/// its last vertex.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, IsoError> {
    if n > CANON_CAP {
        return Err(IsoError::CapExceeded(n));
    }
    let mut reps = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen = std::collections::HashMap::new();
        for g in &reps {
            for nbhd in 0..(1u64 << (k - 1)) {
                let mut ext = g.disjoint_union(&Graph::empty(1));
                for u in crate::graph::bits_to_labels(nbhd) {
                    ext = extend_with_edge(ext, u, k - 1);
                }
                let key = canonical_key(&ext)?;
                seen.entry(key).or_insert(ext);
            }
        }
        let mut next: Vec<(CanonicalKey, Graph)> = seen.into_iter().collect();
        next.sort_by_key(|(key, _)| *key);
        reps = next.into_iter().map(|(_, g)| g).collect();
    }
    if connected_only {
        reps.retain(|g| g.is_connected());
    }
    Ok(reps)
}

fn extend_with_edge(g: Graph, u: usize, v: usize) -> Graph {
    let mut edges = g.edges();
    edges.push((u, v));
    Graph::from_edges(g.order(), &edges).unwrap()
}

/// Mask of the lowest `n` bits; re-exported shorthand used by callers that
/// work with raw subsets.
pub fn full_mask(n: usize) -> u64 {
    mask_below(n)
}
