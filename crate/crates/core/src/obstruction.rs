//! Forbidden-subgraph families and their structural certificates.
//!
//! An [`ObstructionSet`] is a minimal family: no member contains another as
//! an induced subgraph. [`ramsey_bound`] certifies the smallest order at
//! which every graph triggers the family, and [`extremal_remainder`] picks
//! the densest (or sparsest) free graph just below that threshold -- the raw
//! material for adversarial join constructions. The `sub_h_*` helpers capture
//! when a graph is assembled from proper induced pieces of a single base
//! graph, together with the finite obstruction families that characterize the
//! property.

use crate::graph::Graph;
use crate::iso::{canonical_key, contains_induced, enumerate_graphs, is_free, IsoError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("an obstruction family must have at least one member")]
    Empty,
    #[error("member {0} has no vertices")]
    ZeroOrderMember(usize),
    #[error("member {0} is edgeless; edge deletion can never avoid it")]
    EdgelessMemberInEdgeMode(usize),
}

/// Which elements a run deletes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Node,
    Edge,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Node => write!(f, "node"),
            Mode::Edge => write!(f, "edge"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "node" => Ok(Mode::Node),
            "edge" => Ok(Mode::Edge),
            other => Err(format!("unknown mode `{other}` (expected node or edge)")),
        }
    }
}

/// A member dropped during reduction, with the index of the survivor that
/// made it redundant.
#[derive(Debug, Clone)]
pub struct RemovedMember {
    pub input_index: usize,
    pub graph: Graph,
    pub contains_input_index: usize,
}

/// A minimal nonempty family of forbidden induced subgraphs.
///
/// Member order is preserved from the input and is observable: violation
/// detection scans members in this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionSet {
    members: Vec<Graph>,
}

impl ObstructionSet {
    /// Reduces a family to its minimal members, reporting what was dropped.
    /// A member is dropped when some other member embeds into it induced
    /// (duplicates count; the earlier member survives).
    pub fn reduce(input: Vec<Graph>) -> Result<(Self, Vec<RemovedMember>), ObstructionError> {
        if input.is_empty() {
            return Err(ObstructionError::Empty);
        }
        for (i, g) in input.iter().enumerate() {
            if g.order() == 0 {
                return Err(ObstructionError::ZeroOrderMember(i));
            }
        }
        let mut kept: Vec<(usize, Graph)> = Vec::new();
        let mut removed = Vec::new();
        // Scan by ascending order so that any witness for redundancy is
        // already in `kept`.
        let mut by_order: Vec<usize> = (0..input.len()).collect();
        by_order.sort_by_key(|&i| (input[i].order(), i));
        for i in by_order {
            let g = &input[i];
            match kept.iter().find(|(_, h)| contains_induced(h, g)) {
                Some(&(j, _)) => removed.push(RemovedMember {
                    input_index: i,
                    graph: g.clone(),
                    contains_input_index: j,
                }),
                None => kept.push((i, g.clone())),
            }
        }
        kept.sort_by_key(|&(i, _)| i);
        let members = kept.into_iter().map(|(_, g)| g).collect();
        Ok((ObstructionSet { members }, removed))
    }

    /// Reduction that discards the removal report.
    pub fn reduced(input: Vec<Graph>) -> Result<Self, ObstructionError> {
        Ok(Self::reduce(input)?.0)
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    /// Largest member order; the `k` in index-advice widths.
    pub fn max_order(&self) -> usize {
        self.members.iter().map(Graph::order).max().unwrap()
    }

    /// Largest member edge count; the edge-mode analogue of `k`.
    pub fn max_size(&self) -> usize {
        self.members.iter().map(Graph::size).max().unwrap()
    }

    pub fn has_complete_member(&self) -> bool {
        self.members
            .iter()
            .any(|g| g.size() == g.order() * (g.order() - 1) / 2)
    }

    pub fn has_edgeless_member(&self) -> bool {
        self.members.iter().any(|g| g.size() == 0)
    }

    /// Edge-deletion runs cannot avoid an edgeless member.
    pub fn validate_for_mode(&self, mode: Mode) -> Result<(), ObstructionError> {
        if mode == Mode::Edge {
            if let Some(i) = self.members.iter().position(|g| g.size() == 0) {
                return Err(ObstructionError::EdgelessMemberInEdgeMode(i));
            }
        }
        Ok(())
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        is_free(g, &self.members)
    }

    /// Member-wise complement, order preserved. Minimality is invariant
    /// under complementation.
    pub fn complemented(&self) -> Self {
        ObstructionSet {
            members: self.members.iter().map(Graph::complement).collect(),
        }
    }
}

/// Witness that `r` is the smallest order forcing the family everywhere.
#[derive(Debug, Clone)]
pub struct RamseyCertificate {
    /// Every graph of order `r` contains a member induced.
    pub r: usize,
    /// A free graph of order `r - 1`, proving minimality.
    pub witness: Graph,
}

/// Finds the minimal order `r <= cap` such that every graph of that order
/// contains a family member, by exhaustive isomorphism-class enumeration.
///
/// Returns `None` when no such order exists up to `cap`; in particular a
/// family without both a complete and an edgeless member is unavoidable at
/// no order, so the search is skipped.
pub fn ramsey_bound(f: &ObstructionSet, cap: usize) -> Result<Option<RamseyCertificate>, IsoError> {
    if !f.has_complete_member() || !f.has_edgeless_member() {
        return Ok(None);
    }
    let mut witness = Graph::empty(0);
    for n in 1..=cap {
        let reps = enumerate_graphs(n, false)?;
        match reps.iter().find(|g| f.is_free(g)) {
            // Representatives are sorted by canonical key, so the first free
            // one is a deterministic witness for the next level.
            Some(free) => witness = free.clone(),
            None => return Ok(Some(RamseyCertificate { r: n, witness })),
        }
    }
    Ok(None)
}

/// Whether the remainder search maximizes or minimizes the edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalMode {
    MaxEdges,
    MinEdges,
}

/// The extremal free graph of order `r - 1`, with the structural facts the
/// join constructions depend on.
#[derive(Debug, Clone)]
pub struct RemainderGraph {
    pub graph: Graph,
    pub mode: ExtremalMode,
    /// Clique number of the remainder (the `c` of the clique-join family).
    pub clique_number: usize,
    /// Independence number (the dual parameter).
    pub independence_number: usize,
    pub has_universal_vertex: bool,
    pub has_isolated_vertex: bool,
}

/// Picks the free graph of order `cert.r - 1` with extremal edge count;
/// ties break to the lowest canonical key.
pub fn extremal_remainder(
    f: &ObstructionSet,
    cert: &RamseyCertificate,
    mode: ExtremalMode,
) -> Result<RemainderGraph, IsoError> {
    let order = cert.r - 1;
    let mut best: Option<(usize, crate::iso::CanonicalKey, Graph)> = None;
    for g in enumerate_graphs(order, false)? {
        if !f.is_free(&g) {
            continue;
        }
        let key = canonical_key(&g)?;
        let candidate = (g.size(), key, g);
        let take = match &best {
            None => true,
            // Prefer the extremal edge count, then the lowest canonical key.
            Some(cur) => match mode {
                ExtremalMode::MaxEdges => {
                    candidate.0 > cur.0 || (candidate.0 == cur.0 && candidate.1 < cur.1)
                }
                ExtremalMode::MinEdges => {
                    candidate.0 < cur.0 || (candidate.0 == cur.0 && candidate.1 < cur.1)
                }
            },
        };
        if take {
            best = Some(candidate);
        }
    }
    let (_, _, graph) = best.expect("a free graph of order r-1 exists by minimality of r");
    Ok(RemainderGraph {
        clique_number: graph.clique_number(),
        independence_number: graph.complement().clique_number(),
        has_universal_vertex: !graph.universal_vertices().is_empty(),
        has_isolated_vertex: !graph.isolated_vertices().is_empty(),
        graph,
        mode,
    })
}

/// True iff every connected component of `g` is a proper induced subgraph
/// of `h`. The empty graph qualifies vacuously.
pub fn is_sub_h_union(g: &Graph, h: &Graph) -> bool {
    g.connected_components().iter().all(|comp| {
        let part = g.induced(comp);
        part.order() < h.order() && contains_induced(&part, h)
    })
}

/// True iff every join factor of `g` is a proper induced subgraph of `h`.
pub fn is_sub_h_join(g: &Graph, h: &Graph) -> bool {
    g.join_decomposition().iter().all(|part| {
        let part = g.induced(part);
        part.order() < h.order() && contains_induced(&part, h)
    })
}

/// The finite family characterizing failure of [`is_sub_h_union`]: a graph is
/// *not* a sub-`h`-union iff it contains a member induced.
///
/// Members are the connected graphs of order `|h|`, plus the smaller
/// connected graphs that do not embed in `h`, minimalized and sorted by
/// (order, canonical key).
pub fn not_sub_h_union_family(h: &Graph) -> Result<Vec<Graph>, IsoError> {
    let mut family = Vec::new();
    for n in 1..h.order() {
        for g in enumerate_graphs(n, true)? {
            if !contains_induced(&g, h) {
                family.push(g);
            }
        }
    }
    family.extend(enumerate_graphs(h.order(), true)?);
    // Minimalize: earlier (smaller) members absorb later ones.
    let mut minimal: Vec<Graph> = Vec::new();
    for g in family {
        if !minimal.iter().any(|m| contains_induced(m, &g)) {
            minimal.push(g);
        }
    }
    sort_by_key_order(&mut minimal)?;
    Ok(minimal)
}

/// Complement-dual of [`not_sub_h_union_family`]: a graph is *not* a
/// sub-`h`-join iff it contains a member induced.
pub fn not_sub_h_join_family(h: &Graph) -> Result<Vec<Graph>, IsoError> {
    let mut family: Vec<Graph> = not_sub_h_union_family(&h.complement())?
        .iter()
        .map(Graph::complement)
        .collect();
    sort_by_key_order(&mut family)?;
    Ok(family)
}

fn sort_by_key_order(graphs: &mut [Graph]) -> Result<(), IsoError> {
    let mut keyed: Vec<(usize, crate::iso::CanonicalKey)> = Vec::with_capacity(graphs.len());
    for g in graphs.iter() {
        keyed.push((g.order(), canonical_key(g)?));
    }
    let mut idx: Vec<usize> = (0..graphs.len()).collect();
    idx.sort_by_key(|&i| keyed[i]);
    let reordered: Vec<Graph> = idx.iter().map(|&i| graphs[i].clone()).collect();
    graphs.clone_from_slice(&reordered);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    fn two_k2() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
    }

    fn k3_and_co_k3() -> ObstructionSet {
        ObstructionSet::reduced(vec![Graph::complete(3), Graph::empty(3)]).unwrap()
    }

    #[test]
    fn reduce_drops_members_containing_an_edge() {
        let (set, removed) =
            ObstructionSet::reduce(vec![Graph::path(3), Graph::complete(2), Graph::complete(4)])
                .unwrap();
        assert_eq!(set.members(), &[Graph::complete(2)]);
        assert_eq!(removed.len(), 2);
    }

    #[test]
    fn reduce_keeps_incomparable_members_in_input_order() {
        let input = vec![Graph::complete(3), Graph::empty(3)];
        let (set, removed) = ObstructionSet::reduce(input.clone()).unwrap();
        assert_eq!(set.members(), input.as_slice());
        assert!(removed.is_empty());
    }

    #[test]
    fn reduce_deduplicates_isomorphic_members() {
        let p3 = Graph::complete(2).glue(0, &Graph::complete(2), 0).unwrap();
        let (set, removed) = ObstructionSet::reduce(vec![Graph::path(3), p3]).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(removed.len(), 1);
    }

    #[test]
    fn reduce_rejects_empty_and_zero_order() {
        assert_eq!(ObstructionSet::reduce(vec![]).unwrap_err(), ObstructionError::Empty);
        assert!(matches!(
            ObstructionSet::reduce(vec![Graph::empty(0)]).unwrap_err(),
            ObstructionError::ZeroOrderMember(0)
        ));
    }

    #[test]
    fn edge_mode_rejects_edgeless_members() {
        let set = ObstructionSet::reduced(vec![Graph::empty(3)]).unwrap();
        assert!(set.validate_for_mode(Mode::Node).is_ok());
        assert!(set.validate_for_mode(Mode::Edge).is_err());
        assert!(two_k2_set().validate_for_mode(Mode::Edge).is_ok());
    }

    fn two_k2_set() -> ObstructionSet {
        ObstructionSet::reduced(vec![two_k2()]).unwrap()
    }

    #[test]
    fn ramsey_bound_for_triangle_and_co_triangle_is_six() {
        let cert = ramsey_bound(&k3_and_co_k3(), 8).unwrap().unwrap();
        assert_eq!(cert.r, 6);
        assert!(is_isomorphic(&cert.witness, &Graph::cycle(5)).unwrap());
    }

    #[test]
    fn ramsey_bound_for_all_order_four_graphs_is_four() {
        let f = ObstructionSet::reduced(enumerate_graphs(4, false).unwrap()).unwrap();
        let cert = ramsey_bound(&f, 8).unwrap().unwrap();
        assert_eq!(cert.r, 4);
        assert_eq!(cert.witness.order(), 3);
    }

    #[test]
    fn ramsey_bound_absent_without_an_edgeless_member() {
        let f = ObstructionSet::reduced(vec![Graph::complete(3)]).unwrap();
        assert!(ramsey_bound(&f, 8).unwrap().is_none());
    }

    #[test]
    fn max_remainder_for_triangle_family_is_the_five_cycle() {
        let f = k3_and_co_k3();
        let cert = ramsey_bound(&f, 8).unwrap().unwrap();
        let d = extremal_remainder(&f, &cert, ExtremalMode::MaxEdges).unwrap();
        assert!(is_isomorphic(&d.graph, &Graph::cycle(5)).unwrap());
        assert_eq!(d.clique_number, 2);
        assert_eq!(d.independence_number, 2);
        assert!(!d.has_universal_vertex);
        assert!(!d.has_isolated_vertex);
        // C5 is self-complementary, so the sparse remainder agrees.
        let d_min = extremal_remainder(&f, &cert, ExtremalMode::MinEdges).unwrap();
        assert!(is_isomorphic(&d_min.graph, &Graph::cycle(5)).unwrap());
    }

    #[test]
    fn union_family_of_a_path_is_path_and_triangle() {
        let family = not_sub_h_union_family(&Graph::path(3)).unwrap();
        assert_eq!(family.len(), 2);
        assert!(family.iter().any(|g| is_isomorphic(g, &Graph::path(3)).unwrap()));
        assert!(family.iter().any(|g| is_isomorphic(g, &Graph::complete(3)).unwrap()));
    }

    #[test]
    fn union_family_of_a_triangle_matches_the_path_case() {
        let family = not_sub_h_union_family(&Graph::complete(3)).unwrap();
        assert_eq!(family.len(), 2);
    }

    #[test]
    fn union_family_of_an_edge_is_the_edge() {
        let family = not_sub_h_union_family(&Graph::complete(2)).unwrap();
        assert_eq!(family, vec![Graph::complete(2)]);
    }

    #[test]
    fn union_family_of_p4_keeps_triangle_free_order_four_graphs() {
        let family = not_sub_h_union_family(&Graph::path(4)).unwrap();
        assert_eq!(family.len(), 4);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        for want in [Graph::complete(3), Graph::path(4), Graph::cycle(4), star] {
            assert!(family.iter().any(|g| is_isomorphic(g, &want).unwrap()));
        }
    }

    #[test]
    fn join_family_is_the_complement_of_the_union_family() {
        let family = not_sub_h_join_family(&Graph::empty(3)).unwrap();
        let k2_plus_k1 = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(family.len(), 2);
        assert!(family.iter().any(|g| is_isomorphic(g, &Graph::empty(3)).unwrap()));
        assert!(family.iter().any(|g| is_isomorphic(g, &k2_plus_k1).unwrap()));
    }

    #[test]
    fn p4_is_an_obstruction_to_its_own_joins() {
        // P4 is self-complementary and not a join graph, so it can never be
        // assembled from proper induced pieces of itself.
        assert!(!is_sub_h_join(&Graph::path(4), &Graph::path(4)));
        let family = not_sub_h_join_family(&Graph::path(4)).unwrap();
        assert!(family.iter().any(|g| is_isomorphic(g, &Graph::path(4)).unwrap()));
    }

    #[test]
    fn sub_union_examples() {
        assert!(is_sub_h_union(&two_k2(), &Graph::path(3)));
        assert!(!is_sub_h_union(&Graph::path(3), &Graph::path(3)));
        assert!(is_sub_h_union(&Graph::empty(0), &Graph::path(3)));
        assert!(is_sub_h_join(&Graph::cycle(4), &Graph::empty(3)));
        assert!(!is_sub_h_join(&Graph::empty(3), &Graph::empty(3)));
    }

    #[test]
    fn sub_union_and_sub_join_are_complement_duals() {
        for g in enumerate_graphs(4, false).unwrap() {
            for h in enumerate_graphs(3, false).unwrap() {
                if h.order() == 0 {
                    continue;
                }
                assert_eq!(
                    is_sub_h_union(&g, &h),
                    is_sub_h_join(&g.complement(), &h.complement())
                );
            }
        }
    }

    #[test]
    fn complemented_family_preserves_order_and_minimality() {
        let f = k3_and_co_k3();
        let fc = f.complemented();
        assert_eq!(fc.members()[0], Graph::empty(3));
        assert_eq!(fc.members()[1], Graph::complete(3));
        assert_eq!(fc.complemented(), f);
    }
}
