//! The online reveal-and-settle loop.
//!
//! Vertices of an instance are revealed in label order, one per step. After
//! each reveal the engine repeatedly detects a violation -- an induced copy
//! of some family member in the visible graph -- and asks the strategy for
//! one deletion, until the visible graph is clean. Deletions are irrevocable
//! and may lie outside the detected copy; the engine only insists that they
//! exist and have not been deleted before.

use crate::advice::AdviceTape;
use crate::graph::Graph;
use crate::iso::{find_induced, IsoMapping};
use crate::obstruction::{Mode, ObstructionSet, ObstructionError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// A deletable element: a vertex label or a normalized edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Vertex(usize),
    Edge(usize, usize),
}

impl Element {
    /// Normalizes edge endpoints to `u < v`.
    pub fn edge(u: usize, v: usize) -> Self {
        Element::Edge(u.min(v), u.max(v))
    }

    /// The endpoint pair of an edge element; panics on a vertex.
    pub fn as_edge(&self) -> (usize, usize) {
        match self {
            Element::Edge(u, v) => (*u, *v),
            Element::Vertex(v) => panic!("vertex element v{v} is not an edge"),
        }
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Edge(u, v) => write!(f, "e{u}-{v}"),
        }
    }
}

/// An input to the online game: the reveal order is the label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnlineInstance {
    pub graph: Graph,
    pub mode: Mode,
}

impl OnlineInstance {
    pub fn node(graph: Graph) -> Self {
        OnlineInstance { graph, mode: Mode::Node }
    }

    pub fn edge(graph: Graph) -> Self {
        OnlineInstance { graph, mode: Mode::Edge }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Advice(#[from] crate::advice::AdviceError),
    #[error("strategy returned {0} which is not currently deletable")]
    NotDeletable(Element),
    #[error("strategy returned a {0} in {1} mode")]
    WrongElementKind(Element, Mode),
    #[error("settlement at step {step} did not restore freeness within {limit} deletions")]
    SettlementStalled { step: usize, limit: usize },
    #[error("advice is inconsistent with the run: {0}")]
    InconsistentAdvice(String),
    #[error("offline search budget exhausted after {0} candidate sets")]
    SearchBudgetExceeded(u64),
}

/// A detected induced copy of a family member in the visible graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Index of the detected member in the obstruction set.
    pub member: usize,
    /// The copy's vertex set, sorted by reveal label.
    pub witness: Vec<usize>,
    /// The copy's edges as normalized pairs in lexicographic order.
    pub witness_edges: Vec<(usize, usize)>,
    /// Canonical embedding; `mapping.image[i]` is the reveal label hosting
    /// pattern vertex `i`.
    pub mapping: IsoMapping,
}

/// What a strategy sees when asked for a deletion.
pub struct SettlementContext<'a> {
    /// 1-based reveal step.
    pub step: usize,
    /// 1-based settlement round: deletions performed in the whole run + 1.
    pub round: usize,
    pub mode: Mode,
    pub violation: &'a Violation,
}

/// An online strategy, possibly reading advice.
pub trait Strategy {
    /// Invoked once per run before the first reveal; header advice (like the
    /// total optimum) is read here so runs on clean instances still consume
    /// exactly the written tape.
    fn init(&mut self, _tape: &mut AdviceTape) -> Result<(), EngineError> {
        Ok(())
    }

    /// Must return an element whose deletion is currently legal.
    fn choose(
        &mut self,
        ctx: &SettlementContext<'_>,
        tape: &mut AdviceTape,
    ) -> Result<Element, EngineError>;
}

/// One deletion and the violation that forced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionEvent {
    pub member: usize,
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witness_edges: Vec<(usize, usize)>,
    pub deleted: Element,
}

/// Everything that happened during one reveal step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    /// 1-based step index.
    pub step: usize,
    /// The label revealed at this step.
    pub revealed: usize,
    pub events: Vec<DeletionEvent>,
    /// Advice bits consumed during this step.
    pub bits: usize,
}

/// Full record of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub mode: Mode,
    /// Advice bits consumed before the first reveal.
    pub init_bits: usize,
    pub steps: Vec<StepRecord>,
    /// Total elements deleted.
    pub deletions: usize,
    /// Total advice bits consumed.
    pub total_bits: usize,
}

impl Trace {
    /// All deleted elements in deletion order.
    pub fn deleted_elements(&self) -> Vec<Element> {
        self.steps
            .iter()
            .flat_map(|s| s.events.iter().map(|e| e.deleted))
            .collect()
    }

    /// Deleted elements as a sorted set.
    pub fn deleted_set(&self) -> Vec<Element> {
        let mut v = self.deleted_elements();
        v.sort_unstable();
        v
    }
}

/// Mutable run state: what is revealed and what has been deleted.
#[derive(Debug, Clone)]
pub struct EngineState {
    pub revealed: usize,
    pub deleted_vertices: BTreeSet<usize>,
    pub deleted_edges: BTreeSet<(usize, usize)>,
}

impl EngineState {
    fn new() -> Self {
        EngineState {
            revealed: 0,
            deleted_vertices: BTreeSet::new(),
            deleted_edges: BTreeSet::new(),
        }
    }

    /// The visible graph and the reveal labels of its vertices. Vertex `i`
    /// of the graph is `labels[i]`.
    pub fn visible(&self, instance: &OnlineInstance) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = (0..self.revealed)
            .filter(|v| !self.deleted_vertices.contains(v))
            .collect();
        let mut g = instance.graph.induced(&labels);
        if !self.deleted_edges.is_empty() {
            let local: Vec<(usize, usize)> = self
                .deleted_edges
                .iter()
                .filter_map(|&(u, v)| {
                    let iu = labels.binary_search(&u).ok()?;
                    let iv = labels.binary_search(&v).ok()?;
                    Some((iu, iv))
                })
                .collect();
            g = g.without_edges(&local);
        }
        (g, labels)
    }
}

/// Finds the first violation in the visible graph: members are scanned in
/// family order and the canonical embedding is translated back to reveal
/// labels.
pub fn detect_violation(
    visible: &Graph,
    labels: &[usize],
    f: &ObstructionSet,
) -> Option<Violation> {
    for (member, h) in f.members().iter().enumerate() {
        if let Some(local) = find_induced(h, visible) {
            let image = IsoMapping {
                image: local.image.iter().map(|&i| labels[i]).collect(),
            };
            let witness = image.image_set();
            let mut witness_edges = Vec::new();
            let local_set = local.image_set();
            for i in 0..local_set.len() {
                for j in (i + 1)..local_set.len() {
                    if visible.has_edge(local_set[i], local_set[j]) {
                        witness_edges.push((labels[local_set[i]], labels[local_set[j]]));
                    }
                }
            }
            return Some(Violation { member, witness, witness_edges, mapping: image });
        }
    }
    None
}

/// Plays a full run and returns its trace.
///
/// Per step: reveal one vertex, then settle -- while a violation exists, ask
/// the strategy for one deletion and apply it. Errors if the strategy returns
/// an element that is out of range, of the wrong kind for the mode, or
/// already deleted.
pub fn run(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    strategy: &mut dyn Strategy,
    tape: &mut AdviceTape,
) -> Result<Trace, EngineError> {
    f.validate_for_mode(instance.mode)?;
    let n = instance.graph.order();
    let mut state = EngineState::new();
    strategy.init(tape)?;
    let init_bits = tape.bits_read();
    let mut bits_before = init_bits;
    let mut steps = Vec::with_capacity(n);
    let mut deletions = 0usize;

    for step in 1..=n {
        state.revealed = step;
        let mut events = Vec::new();
        let limit = match instance.mode {
            Mode::Node => step,
            Mode::Edge => instance.graph.induced(&(0..step).collect::<Vec<_>>()).size(),
        };
        loop {
            let (visible, labels) = state.visible(instance);
            let Some(violation) = detect_violation(&visible, &labels, f) else {
                break;
            };
            if events.len() > limit {
                return Err(EngineError::SettlementStalled { step, limit });
            }
            let ctx = SettlementContext {
                step,
                round: deletions + 1,
                mode: instance.mode,
                violation: &violation,
            };
            let element = strategy.choose(&ctx, tape)?;
            apply_deletion(instance, &mut state, element)?;
            deletions += 1;
            events.push(DeletionEvent {
                member: violation.member,
                witness: violation.witness.clone(),
                witness_edges: match instance.mode {
                    Mode::Edge => violation.witness_edges.clone(),
                    Mode::Node => Vec::new(),
                },
                deleted: element,
            });
        }
        let bits_now = tape.bits_read();
        steps.push(StepRecord {
            step,
            revealed: step - 1,
            events,
            bits: bits_now - bits_before,
        });
        bits_before = bits_now;
    }

    // The loop only exits a step once the visible graph is clean.
    debug_assert!({
        let (visible, labels) = state.visible(instance);
        detect_violation(&visible, &labels, f).is_none()
    });
    Ok(Trace {
        mode: instance.mode,
        init_bits,
        steps,
        deletions,
        total_bits: tape.bits_read(),
    })
}

fn apply_deletion(
    instance: &OnlineInstance,
    state: &mut EngineState,
    element: Element,
) -> Result<(), EngineError> {
    match (instance.mode, element) {
        (Mode::Node, Element::Vertex(v)) => {
            if v >= state.revealed || state.deleted_vertices.contains(&v) {
                return Err(EngineError::NotDeletable(element));
            }
            state.deleted_vertices.insert(v);
            Ok(())
        }
        (Mode::Edge, Element::Edge(u, v)) => {
            let (u, v) = (u.min(v), u.max(v));
            if v >= state.revealed
                || !instance.graph.has_edge(u, v)
                || state.deleted_edges.contains(&(u, v))
            {
                return Err(EngineError::NotDeletable(element));
            }
            state.deleted_edges.insert((u, v));
            Ok(())
        }
        (mode, el) => Err(EngineError::WrongElementKind(el, mode)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::Greedy;

    fn two_k2() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
    }

    fn set(members: Vec<Graph>) -> ObstructionSet {
        ObstructionSet::reduced(members).unwrap()
    }

    #[test]
    fn triangle_forces_one_deletion_at_step_three() {
        let f = set(vec![Graph::complete(3)]);
        let instance = OnlineInstance::node(Graph::complete(3));
        let mut tape = AdviceTape::new();
        let trace = run(&instance, &f, &mut Greedy, &mut tape).unwrap();
        assert_eq!(trace.deletions, 1);
        assert_eq!(trace.steps[2].events.len(), 1);
        assert_eq!(trace.steps[2].events[0].witness, vec![0, 1, 2]);
        assert_eq!(trace.total_bits, 0);
    }

    #[test]
    fn disconnected_member_triggers_only_when_complete() {
        // 2K2 first appears when the fourth vertex arrives.
        let f = set(vec![two_k2()]);
        let instance = OnlineInstance::node(two_k2());
        let trace = run(&instance, &f, &mut Greedy, &mut AdviceTape::new()).unwrap();
        assert_eq!(trace.deletions, 1);
        assert!(trace.steps[..3].iter().all(|s| s.events.is_empty()));
        assert_eq!(trace.steps[3].events[0].witness, vec![0, 1, 2, 3]);
    }

    #[test]
    fn edge_mode_deletes_edges_and_records_copy_edges() {
        let f = set(vec![Graph::path(3)]);
        let instance = OnlineInstance::edge(Graph::path(3));
        let trace = run(&instance, &f, &mut Greedy, &mut AdviceTape::new()).unwrap();
        assert_eq!(trace.deletions, 1);
        let ev = &trace.steps[2].events[0];
        assert_eq!(ev.witness_edges, vec![(0, 1), (1, 2)]);
        assert_eq!(ev.deleted, Element::Edge(0, 1));
    }

    #[test]
    fn edge_mode_on_an_edge_member_strips_a_matching() {
        // Deleting edges against f = {K2} must remove every edge.
        let f = set(vec![Graph::complete(2)]);
        let instance = OnlineInstance::edge(Graph::path(3));
        let trace = run(&instance, &f, &mut Greedy, &mut AdviceTape::new()).unwrap();
        assert_eq!(trace.deletions, 2);
    }

    #[test]
    fn node_mode_on_a_path_member() {
        let f = set(vec![Graph::complete(2)]);
        let instance = OnlineInstance::node(Graph::path(3));
        let trace = run(&instance, &f, &mut Greedy, &mut AdviceTape::new()).unwrap();
        // Greedy deletes the first endpoint of each edge, so the path costs
        // 2 where deleting the middle vertex would have cost 1.
        assert_eq!(trace.deletions, 2);
        assert_eq!(trace.deleted_set(), vec![Element::Vertex(0), Element::Vertex(1)]);
    }

    #[test]
    fn detection_scans_members_in_family_order() {
        let f = set(vec![Graph::empty(3), Graph::complete(3)]);
        let g = Graph::complete(3).disjoint_union(&Graph::empty(3));
        let (visible, labels) = (g.clone(), (0..6).collect::<Vec<_>>());
        let v = detect_violation(&visible, &labels, &f).unwrap();
        // The edgeless member is listed first and wins despite the triangle
        // having smaller labels; its smallest image takes one triangle
        // vertex plus two of the isolated ones.
        assert_eq!(v.member, 0);
        assert_eq!(v.witness, vec![0, 3, 4]);
    }

    #[test]
    fn witness_is_canonical_smallest_image() {
        let f = set(vec![Graph::complete(3)]);
        let g = Graph::complete(3).glue(2, &Graph::complete(3), 2).unwrap();
        let labels: Vec<usize> = (0..5).collect();
        let v = detect_violation(&g, &labels, &f).unwrap();
        assert_eq!(v.witness, vec![0, 1, 2]);
    }

    #[test]
    fn deleted_labels_translate_back_to_reveal_labels() {
        // After deleting vertex 0, a violation among later labels must be
        // reported in original labels.
        let f = set(vec![Graph::complete(3)]);
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3), (0, 1)]).unwrap();
        let mut state = EngineState::new();
        state.revealed = 4;
        state.deleted_vertices.insert(0);
        let (visible, labels) = state.visible(&OnlineInstance::node(g));
        let v = detect_violation(&visible, &labels, &f).unwrap();
        assert_eq!(v.witness, vec![1, 2, 3]);
    }

    #[test]
    fn runs_are_deterministic() {
        let f = set(vec![Graph::complete(3), Graph::empty(3)]);
        let instance = OnlineInstance::node(Graph::complete(4).join(&Graph::cycle(5)));
        let t1 = run(&instance, &f, &mut Greedy, &mut AdviceTape::new()).unwrap();
        let t2 = run(&instance, &f, &mut Greedy, &mut AdviceTape::new()).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn invalid_deletions_are_rejected() {
        struct DeleteTwice;
        impl Strategy for DeleteTwice {
            fn choose(
                &mut self,
                _ctx: &SettlementContext<'_>,
                _tape: &mut AdviceTape,
            ) -> Result<Element, EngineError> {
                Ok(Element::Vertex(0))
            }
        }
        let f = set(vec![Graph::complete(2)]);
        let instance = OnlineInstance::node(Graph::complete(3));
        let err = run(&instance, &f, &mut DeleteTwice, &mut AdviceTape::new()).unwrap_err();
        assert!(matches!(err, EngineError::NotDeletable(Element::Vertex(0))));
    }

    #[test]
    fn wrong_element_kind_is_rejected() {
        struct EdgeInNodeMode;
        impl Strategy for EdgeInNodeMode {
            fn choose(
                &mut self,
                _ctx: &SettlementContext<'_>,
                _tape: &mut AdviceTape,
            ) -> Result<Element, EngineError> {
                Ok(Element::edge(0, 1))
            }
        }
        let f = set(vec![Graph::complete(2)]);
        let instance = OnlineInstance::node(Graph::complete(2));
        let err = run(&instance, &f, &mut EdgeInNodeMode, &mut AdviceTape::new()).unwrap_err();
        assert!(matches!(err, EngineError::WrongElementKind(..)));
    }
}
