//! Brute-force offline optima.
//!
//! Deletion sets are enumerated by ascending cardinality, so the first
//! feasible size is the optimum and *all* solutions of that size are
//! returned. Desk scale only: a work budget bounds the number of candidate
//! sets examined, which keeps small-optimum searches over large pools legal
//! while rejecting genuinely exponential requests.

use crate::engine::{Element, EngineError, OnlineInstance};
use crate::graph::Graph;
use crate::obstruction::{Mode, ObstructionSet};
use itertools::Itertools;

/// Cap on candidate sets examined by one search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_candidates: 10_000_000 }
    }
}

/// All minimum vertex-deletion sets making `g` free of `f`.
/// Solutions are sorted lexicographically.
pub fn optimum_node_deletions(
    g: &Graph,
    f: &ObstructionSet,
    budget: SearchBudget,
) -> Result<(usize, Vec<Vec<usize>>), EngineError> {
    let n = g.order();
    let mut examined = 0u64;
    for k in 0..=n {
        let mut solutions = Vec::new();
        for dropped in (0..n).combinations(k) {
            examined += 1;
            if examined > budget.max_candidates {
                return Err(EngineError::SearchBudgetExceeded(examined));
            }
            let kept: Vec<usize> = (0..n).filter(|v| !dropped.contains(v)).collect();
            if f.is_free(&g.induced(&kept)) {
                solutions.push(dropped);
            }
        }
        if !solutions.is_empty() {
            return Ok((k, solutions));
        }
    }
    unreachable!("deleting every vertex leaves the empty graph, which is free")
}

/// All minimum edge-deletion sets making `g` free of `f`.
/// An optimum size together with every minimum solution as an edge list.
pub type EdgeOptimum = (usize, Vec<Vec<(usize, usize)>>);

/// Requires a family with no edgeless member, so full edge deletion always
/// succeeds and the search terminates.
pub fn optimum_edge_deletions(
    g: &Graph,
    f: &ObstructionSet,
    budget: SearchBudget,
) -> Result<EdgeOptimum, EngineError> {
    f.validate_for_mode(Mode::Edge)?;
    let pool = g.edges();
    let mut examined = 0u64;
    for k in 0..=pool.len() {
        let mut solutions = Vec::new();
        for dropped in pool.iter().copied().combinations(k) {
            examined += 1;
            if examined > budget.max_candidates {
                return Err(EngineError::SearchBudgetExceeded(examined));
            }
            if f.is_free(&g.without_edges(&dropped)) {
                solutions.push(dropped);
            }
        }
        if !solutions.is_empty() {
            return Ok((k, solutions));
        }
    }
    unreachable!("deleting every edge leaves an edgeless graph, which is free")
}

/// Mode-dispatching optimum with solutions as generic elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OfflineOptimum {
    pub size: usize,
    /// Every minimum solution, each sorted, the list sorted lexicographically.
    pub solutions: Vec<Vec<Element>>,
}

impl OfflineOptimum {
    /// The lexicographically smallest optimal solution; the advisors' pick.
    pub fn smallest(&self) -> &[Element] {
        &self.solutions[0]
    }
}

/// Computes the offline optimum of an instance under its mode.
pub fn offline_optimum(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    budget: SearchBudget,
) -> Result<OfflineOptimum, EngineError> {
    match instance.mode {
        Mode::Node => {
            let (size, sols) = optimum_node_deletions(&instance.graph, f, budget)?;
            Ok(OfflineOptimum {
                size,
                solutions: sols
                    .into_iter()
                    .map(|s| s.into_iter().map(Element::Vertex).collect())
                    .collect(),
            })
        }
        Mode::Edge => {
            let (size, sols) = optimum_edge_deletions(&instance.graph, f, budget)?;
            Ok(OfflineOptimum {
                size,
                solutions: sols
                    .into_iter()
                    .map(|s| s.into_iter().map(|(u, v)| Element::Edge(u, v)).collect())
                    .collect(),
            })
        }
    }
}
