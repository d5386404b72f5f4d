//! Generators for the adversarial instance families.
//!
//! Each family fixes a reveal-label layout in which all members share a
//! common prefix and diverge only where the adversary made a choice, so the
//! distinguishability verifier can count how many endings an optimal
//! algorithm must tell apart:
//!
//! * [`connected_lb_family`] -- per gadget, two copies of a connected base
//!   graph glued at a chosen vertex, gadgets side by side.
//! * [`disconnected_lb_family`] -- the complement-dual: glued copies joined
//!   everywhere else, gadgets joined together.
//! * [`edge_lb_family`] -- joins of edge extensions, one per chosen edge.
//! * [`clique_join_family`] / [`independent_join_family`] -- a large clique
//!   (or independent set) completed into `K_opt` joined with an extremal
//!   free remainder, the choice being which prefix vertices survive.

use crate::engine::{Element, OnlineInstance};
use crate::graph::{Graph, GraphError};
use crate::obstruction::{ExtremalMode, Mode, ObstructionSet, RemainderGraph};
use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("the base graph must be connected")]
    BaseNotConnected,
    #[error("the base graph must be disconnected")]
    BaseNotDisconnected,
    #[error("the base graph must have no isolated vertices")]
    IsolatedVertexInBase,
    #[error("the graph has no isolated vertex to lift out")]
    NoIsolatedVertex,
    #[error("the base graph needs at least {0} vertices")]
    OrderTooSmall(usize),
    #[error("a family needs at least one gadget")]
    EmptyFamily,
    #[error("({0}, {1}) is not an edge of the base graph")]
    NotAnEdge(usize, usize),
    #[error("the extension self-check failed; it must {0}")]
    ExtensionAxiom(&'static str),
    #[error("the survivor set must pick {expected} of the first {prefix} labels, got {got}")]
    BadSurvivorSet { expected: usize, got: usize, prefix: usize },
    #[error("the deletion budget must exceed {0}, the largest {1} member")]
    BudgetTooSmall(usize, &'static str),
    #[error("the remainder graph must come from {0:?} selection")]
    WrongRemainderMode(ExtremalMode),
    #[error("the remainder graph must have no isolated vertex")]
    IsolatedVertexInRemainder,
    #[error("complement duality applies to node deletion only")]
    EdgeModeDuality,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which construction a family came from; fixes how choices are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Connected,
    Disconnected,
    Edge,
    CliqueJoin,
    IndependentJoin,
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "connected" => Ok(FamilyKind::Connected),
            "disconnected" => Ok(FamilyKind::Disconnected),
            "edge" => Ok(FamilyKind::Edge),
            "clique-join" => Ok(FamilyKind::CliqueJoin),
            "independent-join" => Ok(FamilyKind::IndependentJoin),
            other => Err(format!(
                "unknown family kind '{other}' (expected connected, disconnected, edge, \
                 clique-join, or independent-join)"
            )),
        }
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FamilyKind::Connected => "connected",
            FamilyKind::Disconnected => "disconnected",
            FamilyKind::Edge => "edge",
            FamilyKind::CliqueJoin => "clique-join",
            FamilyKind::IndependentJoin => "independent-join",
        };
        write!(f, "{name}")
    }
}

/// One family member: the adversary's choices and the instance they yield.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    /// Choice vector: glue vertices, edge indices, or survivor labels.
    pub choice: Vec<usize>,
    pub instance: OnlineInstance,
    /// The optimum the construction claims is unique.
    pub expected_optimum: Vec<Element>,
}

/// A full adversarial family, one member per choice vector.
#[derive(Debug, Clone)]
pub struct Family {
    pub kind: FamilyKind,
    pub mode: Mode,
    /// Expected optimum size of every member.
    pub opt: usize,
    /// Whether the construction claims each member's optimum is unique.
    pub unique_optimum: bool,
    pub members: Vec<FamilyMember>,
}

/// All choice vectors of length `m` over `0..choices`, first slot slowest.
fn choice_vectors(choices: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..m).map(|_| 0..choices).multi_cartesian_product()
}

/// Two copies of `h` glued at vertex `v`; the second copy's remaining
/// vertices take labels after the first copy, in order.
pub fn glue_gadget(h: &Graph, v: usize) -> Result<Graph, GraphError> {
    h.glue(v, h, v)
}

/// Gadgets of two glued copies of a connected base, laid side by side.
///
/// The member for choices `(v_1..v_m)` reveals gadget by gadget, each
/// gadget's first copy before its extension; its unique optimum is the glued
/// vertex of every gadget.
pub fn connected_lb_family(h: &Graph, m: usize) -> Result<Family, GadgetError> {
    if h.order() < 2 {
        return Err(GadgetError::OrderTooSmall(2));
    }
    if !h.is_connected() {
        return Err(GadgetError::BaseNotConnected);
    }
    if m == 0 {
        return Err(GadgetError::EmptyFamily);
    }
    let gadget_order = 2 * h.order() - 1;
    let mut members = Vec::new();
    for choice in choice_vectors(h.order(), m) {
        let mut graph = Graph::empty(0);
        for &v in &choice {
            graph = graph.disjoint_union(&glue_gadget(h, v)?);
        }
        let expected_optimum = choice
            .iter()
            .enumerate()
            .map(|(j, &v)| Element::Vertex(j * gadget_order + v))
            .collect();
        members.push(FamilyMember {
            choice,
            instance: OnlineInstance::node(graph),
            expected_optimum,
        });
    }
    Ok(Family {
        kind: FamilyKind::Connected,
        mode: Mode::Node,
        opt: m,
        unique_optimum: true,
        members,
    })
}

/// Two copies of `h` glued at `v` and joined everywhere else -- the
/// complement of [`glue_gadget`] over the complement base.
fn glue_join_gadget(h: &Graph, v: usize) -> Result<Graph, GraphError> {
    let glued = glue_gadget(h, v)?;
    let n = h.order();
    let mut edges = glued.edges();
    for a in (0..n).filter(|&a| a != v) {
        for b in n..glued.order() {
            edges.push((a, b));
        }
    }
    Graph::from_edges(glued.order(), &edges)
}

/// The dual family for a disconnected base: glued copies joined everywhere
/// else, gadgets joined together. Label-exact complement of
/// [`connected_lb_family`] over the complement base.
pub fn disconnected_lb_family(h: &Graph, m: usize) -> Result<Family, GadgetError> {
    if h.order() < 2 {
        return Err(GadgetError::OrderTooSmall(2));
    }
    if h.is_connected() {
        return Err(GadgetError::BaseNotDisconnected);
    }
    if m == 0 {
        return Err(GadgetError::EmptyFamily);
    }
    let gadget_order = 2 * h.order() - 1;
    let mut members = Vec::new();
    for choice in choice_vectors(h.order(), m) {
        let mut graph = Graph::empty(0);
        for &v in &choice {
            graph = graph.join(&glue_join_gadget(h, v)?);
        }
        debug_assert_eq!(
            graph,
            {
                let mut dual = Graph::empty(0);
                for &v in &choice {
                    dual = dual.disjoint_union(&glue_gadget(&h.complement(), v).unwrap());
                }
                dual.complement()
            },
            "the joined gadgets must complement the glued gadgets of the complement base"
        );
        let expected_optimum = choice
            .iter()
            .enumerate()
            .map(|(j, &v)| Element::Vertex(j * gadget_order + v))
            .collect();
        members.push(FamilyMember {
            choice,
            instance: OnlineInstance::node(graph),
            expected_optimum,
        });
    }
    Ok(Family {
        kind: FamilyKind::Disconnected,
        mode: Mode::Node,
        opt: m,
        unique_optimum: true,
        members,
    })
}

/// A supergraph of `h` whose unique minimal `h`-freeing edge deletion is
/// exactly `{e}`, with the machine-checked axioms that certify it.
#[derive(Debug, Clone)]
pub struct EExtension {
    pub u: Graph,
    /// The special edge, in the labels of `u` (same pair as in `h`).
    pub e: (usize, usize),
    /// Labels of `u` inducing the original base graph.
    pub embedding: Vec<usize>,
}

/// Builds the edge extension for a disconnected, isolated-vertex-free base:
/// a second copy sharing only the chosen edge, joined everywhere else.
///
/// The result has `2|h| - 2` vertices and `2‖h‖ - 1 + (|h| - 2)²` edges and
/// is verified against all three extension axioms before being returned.
pub fn e_extension(h: &Graph, e: (usize, usize)) -> Result<EExtension, GadgetError> {
    if h.is_connected() {
        return Err(GadgetError::BaseNotDisconnected);
    }
    if !h.isolated_vertices().is_empty() {
        return Err(GadgetError::IsolatedVertexInBase);
    }
    let (x, y) = Element::edge(e.0, e.1).as_edge();
    if !h.has_edge(x, y) {
        return Err(GadgetError::NotAnEdge(x, y));
    }
    let n = h.order();
    // Second-copy labels: the shared endpoints keep x and y; the rest follow
    // the first copy in ascending order.
    let mut relabel = vec![0usize; n];
    let mut next = n;
    for (w, slot) in relabel.iter_mut().enumerate() {
        *slot = if w == x {
            x
        } else if w == y {
            y
        } else {
            let label = next;
            next += 1;
            label
        };
    }
    let mut edges = h.edges();
    for (a, b) in h.edges() {
        edges.push((relabel[a], relabel[b]));
    }
    for a in (0..n).filter(|&a| a != x && a != y) {
        for b in n..2 * n - 2 {
            edges.push((a, b));
        }
    }
    let u = Graph::from_edges(2 * n - 2, &edges)?;
    debug_assert_eq!(u.size(), 2 * h.size() - 1 + (n - 2) * (n - 2));
    let ext = EExtension { u, e: (x, y), embedding: (0..n).collect() };
    if !crate::verifier::verify_e_extension(&ext, h) {
        return Err(GadgetError::ExtensionAxiom(
            "embed the base, vanish with the special edge, survive all others",
        ));
    }
    Ok(ext)
}

/// Joined edge-extension blocks, one per chosen edge of the base graph.
///
/// The member for choices `(e_1..e_m)` reveals block by block; its unique
/// optimal edge set is the image of the chosen edge in each block.
pub fn edge_lb_family(h: &Graph, m: usize) -> Result<Family, GadgetError> {
    if m == 0 {
        return Err(GadgetError::EmptyFamily);
    }
    let base_edges = h.edges();
    let extensions: Vec<EExtension> = base_edges
        .iter()
        .map(|&e| e_extension(h, e))
        .collect::<Result<_, _>>()?;
    let block_order = 2 * h.order() - 2;
    let mut members = Vec::new();
    for choice in choice_vectors(base_edges.len(), m) {
        let mut graph = Graph::empty(0);
        for &c in &choice {
            graph = graph.join(&extensions[c].u);
        }
        let expected_optimum = choice
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                let (x, y) = extensions[c].e;
                Element::Edge(j * block_order + x, j * block_order + y)
            })
            .collect();
        members.push(FamilyMember {
            choice,
            instance: OnlineInstance::edge(graph),
            expected_optimum,
        });
    }
    Ok(Family {
        kind: FamilyKind::Edge,
        mode: Mode::Edge,
        opt: m,
        unique_optimum: true,
        members,
    })
}

/// Prepends one isolated reveal per isolated vertex of `h` to an instance
/// built for `h` minus those vertices; optima shift by that many steps.
pub fn isolated_prefix(h: &Graph, inner: &OnlineInstance) -> Result<OnlineInstance, GadgetError> {
    let k = h.isolated_vertices().len();
    if k == 0 {
        return Err(GadgetError::NoIsolatedVertex);
    }
    Ok(OnlineInstance {
        graph: Graph::empty(k).disjoint_union(&inner.graph),
        mode: inner.mode,
    })
}

/// Validates a survivor set and returns it sorted.
fn checked_survivors(u_set: &[usize], c: usize, prefix: usize) -> Result<Vec<usize>, GadgetError> {
    let sorted: Vec<usize> = u_set.iter().copied().sorted().dedup().collect();
    if sorted.len() != c || sorted.last().is_some_and(|&l| l >= prefix) {
        return Err(GadgetError::BadSurvivorSet { expected: c, got: u_set.len(), prefix });
    }
    Ok(sorted)
}

/// Core of the clique-side construction: a `K_{opt+c}` prefix completed into
/// `K_opt` joined with the remainder `d`, where the sorted survivor labels
/// play the lexicographically smallest maximum clique of `d`.
fn clique_join_graph(
    d: &Graph,
    c: usize,
    opt: usize,
    u_set: &[usize],
) -> Result<Graph, GadgetError> {
    let prefix = opt + c;
    let survivors = checked_survivors(u_set, c, prefix)?;
    let clique_image = (0..d.order())
        .combinations(c)
        .find(|set| set.iter().tuple_combinations().all(|(&a, &b)| d.has_edge(a, b)))
        .expect("the remainder contains a clique of its clique number");
    // Remainder label -> final label: the chosen clique goes to the
    // survivors, everything else extends past the prefix in order.
    let mut relabel = vec![0usize; d.order()];
    let mut next = prefix;
    let mut clique_slot = 0;
    for (w, slot) in relabel.iter_mut().enumerate() {
        *slot = if clique_image.contains(&w) {
            clique_slot += 1;
            survivors[clique_slot - 1]
        } else {
            let label = next;
            next += 1;
            label
        };
    }
    let total = opt + d.order();
    let mut edges: Vec<(usize, usize)> = (0..prefix).tuple_combinations().collect();
    for (a, b) in d.edges() {
        edges.push((relabel[a], relabel[b]));
    }
    for a in (0..prefix).filter(|a| !survivors.contains(a)) {
        for b in prefix..total {
            edges.push((a, b));
        }
    }
    Ok(Graph::from_edges(total, &edges)?)
}

/// Largest order among members passing `filter`, or an error naming `what`.
fn member_order_bound(
    f: &ObstructionSet,
    filter: impl Fn(&Graph) -> bool,
    what: &'static str,
    opt: usize,
) -> Result<(), GadgetError> {
    let bound = f.members().iter().filter(|g| filter(g)).map(|g| g.order()).max();
    match bound {
        Some(b) if opt > b => Ok(()),
        Some(b) => Err(GadgetError::BudgetTooSmall(b, what)),
        None => Err(GadgetError::BudgetTooSmall(0, what)),
    }
}

/// One clique-side adversarial instance: reveal `K_{opt+c}` first, then
/// complete into `K_opt ∇ D` with the survivor labels embedded into `D`.
///
/// The unique optimum is the prefix minus the survivors.
pub fn clique_join_instance(
    f: &ObstructionSet,
    d: &RemainderGraph,
    opt: usize,
    u_set: &[usize],
) -> Result<OnlineInstance, GadgetError> {
    if d.mode != ExtremalMode::MaxEdges {
        return Err(GadgetError::WrongRemainderMode(ExtremalMode::MaxEdges));
    }
    member_order_bound(f, |g| g.order() >= 1 && g.size() == g.order() * (g.order() - 1) / 2, "complete", opt)?;
    let graph = clique_join_graph(&d.graph, d.clique_number, opt, u_set)?;
    Ok(OnlineInstance::node(graph))
}

/// The dual instance: reveal an independent prefix, then complete into the
/// complement shape. Built by complementing the clique-side construction.
pub fn independent_join_instance(
    f: &ObstructionSet,
    d: &RemainderGraph,
    opt: usize,
    u_set: &[usize],
) -> Result<OnlineInstance, GadgetError> {
    if d.mode != ExtremalMode::MinEdges {
        return Err(GadgetError::WrongRemainderMode(ExtremalMode::MinEdges));
    }
    if d.has_isolated_vertex {
        return Err(GadgetError::IsolatedVertexInRemainder);
    }
    member_order_bound(f, |g| g.size() == 0, "edgeless", opt)?;
    let graph = clique_join_graph(&d.graph.complement(), d.independence_number, opt, u_set)?;
    Ok(OnlineInstance::node(graph.complement()))
}

/// All clique-side instances for a deletion budget: one per survivor set.
pub fn clique_join_family(
    f: &ObstructionSet,
    d: &RemainderGraph,
    opt: usize,
) -> Result<Family, GadgetError> {
    join_family(f, d, opt, FamilyKind::CliqueJoin, d.clique_number)
}

/// All independent-side instances for a deletion budget.
pub fn independent_join_family(
    f: &ObstructionSet,
    d: &RemainderGraph,
    opt: usize,
) -> Result<Family, GadgetError> {
    join_family(f, d, opt, FamilyKind::IndependentJoin, d.independence_number)
}

fn join_family(
    f: &ObstructionSet,
    d: &RemainderGraph,
    opt: usize,
    kind: FamilyKind,
    c: usize,
) -> Result<Family, GadgetError> {
    let mut members = Vec::new();
    for u_set in (0..opt + c).combinations(c) {
        let instance = match kind {
            FamilyKind::CliqueJoin => clique_join_instance(f, d, opt, &u_set)?,
            FamilyKind::IndependentJoin => independent_join_instance(f, d, opt, &u_set)?,
            _ => unreachable!("join families only"),
        };
        let expected_optimum = (0..opt + c)
            .filter(|l| !u_set.contains(l))
            .map(Element::Vertex)
            .collect();
        members.push(FamilyMember { choice: u_set, instance, expected_optimum });
    }
    Ok(Family { kind, mode: Mode::Node, opt, unique_optimum: true, members })
}

/// Swaps a node-deletion problem for its complement: complement the graph,
/// complement every family member, keep labels and reveal order.
///
/// Any run transcript valid on one side is valid verbatim on the other.
pub fn duality_transform(
    instance: &OnlineInstance,
    f: &ObstructionSet,
) -> Result<(OnlineInstance, ObstructionSet), GadgetError> {
    if instance.mode != Mode::Node {
        return Err(GadgetError::EdgeModeDuality);
    }
    Ok((OnlineInstance::node(instance.graph.complement()), f.complemented()))
}
