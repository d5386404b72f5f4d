//! Online strategies and the advisors that prepare their tapes.
//!
//! Three strategies play the game:
//!
//! * [`Greedy`] reads no advice and deletes the first element of every
//!   detected copy -- the baseline that shows why advice is needed.
//! * [`NaiveAlgorithm`] reads the optimum count self-delimited, then one
//!   fixed-width index per forced deletion pointing into the detected copy.
//! * [`LogAlgorithm`] reads the optimum, the number `u` of surviving
//!   vertices, and `u` (round, position) pairs that pin down which vertices
//!   must never be deleted; each settlement round it deletes the smallest
//!   unprotected vertex of the detected copy.
//!
//! Every advisor works the same way: compute an offline optimum, fix its
//! lexicographically smallest solution, replay the run with [`LazyOptimal`]
//! to learn what the algorithm will see, and encode just enough to steer it.

use crate::advice::{field_width, self_delimiting_len, AdviceTape};
use crate::engine::{
    run, Element, EngineError, OnlineInstance, SettlementContext, Strategy, Trace,
};
use crate::obstruction::{Mode, ObstructionSet, RamseyCertificate};
use crate::offline::{offline_optimum, SearchBudget};
use std::collections::BTreeSet;

/// Advice-free baseline: always deletes the first element of the detected
/// copy (smallest reveal label, or lexicographically smallest edge).
pub struct Greedy;

impl Strategy for Greedy {
    fn choose(
        &mut self,
        ctx: &SettlementContext<'_>,
        _tape: &mut AdviceTape,
    ) -> Result<Element, EngineError> {
        match ctx.mode {
            Mode::Node => Ok(Element::Vertex(ctx.violation.witness[0])),
            Mode::Edge => {
                let (u, v) = ctx.violation.witness_edges[0];
                Ok(Element::Edge(u, v))
            }
        }
    }
}

/// Replays a fixed deletion set lazily: whenever forced, delete the smallest
/// solution element inside the detected copy.
///
/// Freeness is hereditary, so a true offline solution always intersects the
/// detected copy; the strategy errors if it does not, which certifies the
/// solution was wrong.
pub struct LazyOptimal {
    solution: BTreeSet<Element>,
}

impl LazyOptimal {
    pub fn new(solution: &[Element]) -> Self {
        LazyOptimal { solution: solution.iter().copied().collect() }
    }

    fn pick(&self, ctx: &SettlementContext<'_>) -> Result<Element, EngineError> {
        let candidate = match ctx.mode {
            Mode::Node => ctx
                .violation
                .witness
                .iter()
                .map(|&v| Element::Vertex(v))
                .find(|el| self.solution.contains(el)),
            Mode::Edge => ctx
                .violation
                .witness_edges
                .iter()
                .map(|&(u, v)| Element::Edge(u, v))
                .find(|el| self.solution.contains(el)),
        };
        candidate.ok_or_else(|| {
            EngineError::InconsistentAdvice(format!(
                "fixed solution misses the detected copy {:?}",
                ctx.violation.witness
            ))
        })
    }
}

impl Strategy for LazyOptimal {
    fn choose(
        &mut self,
        ctx: &SettlementContext<'_>,
        _tape: &mut AdviceTape,
    ) -> Result<Element, EngineError> {
        self.pick(ctx)
    }
}

/// What an advisor hands back: the tape and the optimum it promises.
#[derive(Debug, Clone)]
pub struct AdvisorReport {
    pub tape: AdviceTape,
    pub opt: usize,
}

/// One forced deletion as seen during the advisor's rehearsal run.
#[derive(Debug, Clone)]
struct ChoiceRecord {
    witness: Vec<usize>,
    witness_edges: Vec<(usize, usize)>,
    deleted: Element,
}

/// Lazy replay that also records every forced choice.
struct RecordingLazy<'a> {
    lazy: LazyOptimal,
    records: &'a mut Vec<ChoiceRecord>,
}

impl Strategy for RecordingLazy<'_> {
    fn choose(
        &mut self,
        ctx: &SettlementContext<'_>,
        _tape: &mut AdviceTape,
    ) -> Result<Element, EngineError> {
        let deleted = self.lazy.pick(ctx)?;
        self.records.push(ChoiceRecord {
            witness: ctx.violation.witness.clone(),
            witness_edges: ctx.violation.witness_edges.clone(),
            deleted,
        });
        Ok(deleted)
    }
}

/// Rehearses the lazily replayed smallest optimum and returns the records.
fn rehearse(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    budget: SearchBudget,
) -> Result<(usize, Vec<ChoiceRecord>), EngineError> {
    let optimum = offline_optimum(instance, f, budget)?;
    let mut records = Vec::new();
    let mut recorder = RecordingLazy {
        lazy: LazyOptimal::new(optimum.smallest()),
        records: &mut records,
    };
    let trace = run(instance, f, &mut recorder, &mut AdviceTape::new())?;
    debug_assert_eq!(trace.deletions, optimum.size, "lazy replay must spend the optimum exactly");
    Ok((optimum.size, records))
}

/// Index width of the naive tape for a mode: positions address vertices of
/// the largest member (node mode) or edges of the densest member (edge mode).
pub fn naive_index_width(f: &ObstructionSet, mode: Mode) -> usize {
    match mode {
        Mode::Node => field_width(f.max_order() as u64),
        Mode::Edge => field_width(f.max_size() as u64),
    }
}

/// Closed-form bit budget of the naive advisor.
pub fn naive_budget(opt: usize, index_width: usize) -> usize {
    self_delimiting_len(opt as u64) + opt * index_width
}

/// Closed-form bit budget of the log advisor; `u` survivors, threshold `r`,
/// member cap `k`.
pub fn log_budget(opt: usize, u: usize, r: usize, k: usize) -> usize {
    let pair_bits = if opt == 0 {
        0
    } else {
        u * (field_width(opt as u64) + field_width(k as u64))
    };
    self_delimiting_len(opt as u64) + field_width(r as u64) + pair_bits
}

/// Writes the naive tape: the optimum self-delimited, then for each forced
/// deletion the 0-based position of the element to delete inside the
/// detected copy (vertices sorted by reveal label; edges lexicographic).
pub fn naive_advisor(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    budget: SearchBudget,
) -> Result<AdvisorReport, EngineError> {
    let (opt, records) = rehearse(instance, f, budget)?;
    let width = naive_index_width(f, instance.mode);
    let mut tape = AdviceTape::new();
    tape.write_self_delimiting(opt as u64);
    for rec in &records {
        let position = match rec.deleted {
            Element::Vertex(v) => rec.witness.iter().position(|&w| w == v),
            Element::Edge(u, v) => rec.witness_edges.iter().position(|&e| e == (u, v)),
        };
        let position = position.expect("the deleted element came from the copy");
        tape.write_fixed(position as u64, width)?;
    }
    debug_assert_eq!(tape.bits_written(), naive_budget(opt, width));
    Ok(AdvisorReport { tape, opt })
}

/// The naive online algorithm: one tape index per forced deletion.
pub struct NaiveAlgorithm {
    mode: Mode,
    index_width: usize,
}

impl NaiveAlgorithm {
    pub fn new(f: &ObstructionSet, mode: Mode) -> Self {
        NaiveAlgorithm { mode, index_width: naive_index_width(f, mode) }
    }
}

impl Strategy for NaiveAlgorithm {
    fn init(&mut self, tape: &mut AdviceTape) -> Result<(), EngineError> {
        // The promised optimum is decoded for the bit accounting; the
        // algorithm itself only needs the per-deletion indices.
        tape.read_self_delimiting()?;
        Ok(())
    }

    fn choose(
        &mut self,
        ctx: &SettlementContext<'_>,
        tape: &mut AdviceTape,
    ) -> Result<Element, EngineError> {
        if ctx.mode != self.mode {
            return Err(EngineError::InconsistentAdvice(format!(
                "strategy prepared for {} mode, run is {}",
                self.mode, ctx.mode
            )));
        }
        let index = tape.read_fixed(self.index_width) as usize;
        match self.mode {
            Mode::Node => ctx
                .violation
                .witness
                .get(index)
                .map(|&v| Element::Vertex(v))
                .ok_or_else(|| index_error(index, ctx.violation.witness.len())),
            Mode::Edge => ctx
                .violation
                .witness_edges
                .get(index)
                .map(|&(u, v)| Element::Edge(u, v))
                .ok_or_else(|| index_error(index, ctx.violation.witness_edges.len())),
        }
    }
}

fn index_error(index: usize, len: usize) -> EngineError {
    EngineError::InconsistentAdvice(format!("copy index {index} out of range for size {len}"))
}

/// Writes the log tape: the optimum, the survivor count `u = n - opt`, and
/// `u` pairs `(round, position)` protecting survivors from deletion.
///
/// Survivors that never appear in a detected copy still get a pair -- a
/// harmless repeat of the first real one -- so exactly `u` pairs are written.
/// The remaining graph is free, so `u` is at most `r - 1` and fits its field.
pub fn log_advisor(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    cert: &RamseyCertificate,
    budget: SearchBudget,
) -> Result<AdvisorReport, EngineError> {
    if instance.mode != Mode::Node {
        return Err(EngineError::InconsistentAdvice(
            "the log strategy plays node deletion only".into(),
        ));
    }
    let optimum = offline_optimum(instance, f, budget)?;
    let opt = optimum.size;
    let solution: BTreeSet<usize> = optimum
        .smallest()
        .iter()
        .map(|el| match el {
            Element::Vertex(v) => *v,
            Element::Edge(..) => unreachable!("node-mode solution"),
        })
        .collect();
    let mut records = Vec::new();
    let mut recorder = RecordingLazy {
        lazy: LazyOptimal::new(optimum.smallest()),
        records: &mut records,
    };
    run(instance, f, &mut recorder, &mut AdviceTape::new())?;

    let mut protected = BTreeSet::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (round0, rec) in records.iter().enumerate() {
        for (pos, &v) in rec.witness.iter().enumerate() {
            if !solution.contains(&v) && protected.insert(v) {
                pairs.push((round0 + 1, pos + 1));
            }
        }
    }
    let u = instance.graph.order() - opt;
    if u + 1 > cert.r {
        return Err(EngineError::InconsistentAdvice(format!(
            "{u} survivors contradict the avoidance threshold {}",
            cert.r
        )));
    }
    debug_assert!(pairs.len() <= u);
    if pairs.len() < u {
        // Never-detected survivors need no protection; pad with a repeat.
        let dummy = pairs.first().copied().unwrap_or((1, 1));
        pairs.resize(u, dummy);
        pairs.sort_by_key(|&(r, _)| r);
    }

    let mut tape = AdviceTape::new();
    tape.write_self_delimiting(opt as u64);
    tape.write_fixed(u as u64, field_width(cert.r as u64))?;
    if opt > 0 {
        let rw = field_width(opt as u64);
        let aw = field_width(f.max_order() as u64);
        for &(round, pos) in &pairs {
            tape.write_fixed(round as u64 - 1, rw)?;
            tape.write_fixed(pos as u64 - 1, aw)?;
        }
    }
    debug_assert_eq!(
        tape.bits_written(),
        log_budget(opt, u, cert.r, f.max_order())
    );
    Ok(AdvisorReport { tape, opt })
}

/// The fixed-set online algorithm steered by the log advisor's pairs.
pub struct LogAlgorithm {
    r: usize,
    member_cap: usize,
    opt: usize,
    /// `(round, position)` pairs, ascending rounds.
    pairs: Vec<(usize, usize)>,
    /// Vertices that must survive.
    protected: BTreeSet<usize>,
    round: usize,
}

impl LogAlgorithm {
    pub fn new(f: &ObstructionSet, cert: &RamseyCertificate) -> Self {
        LogAlgorithm {
            r: cert.r,
            member_cap: f.max_order(),
            opt: 0,
            pairs: Vec::new(),
            protected: BTreeSet::new(),
            round: 1,
        }
    }
}

impl Strategy for LogAlgorithm {
    fn init(&mut self, tape: &mut AdviceTape) -> Result<(), EngineError> {
        self.opt = tape.read_self_delimiting()? as usize;
        let u = tape.read_fixed(field_width(self.r as u64)) as usize;
        if self.opt > 0 {
            let rw = field_width(self.opt as u64);
            let aw = field_width(self.member_cap as u64);
            for _ in 0..u {
                let round = tape.read_fixed(rw) as usize + 1;
                let pos = tape.read_fixed(aw) as usize + 1;
                self.pairs.push((round, pos));
            }
        }
        Ok(())
    }

    fn choose(
        &mut self,
        ctx: &SettlementContext<'_>,
        _tape: &mut AdviceTape,
    ) -> Result<Element, EngineError> {
        debug_assert_eq!(self.round, ctx.round, "one deletion per settlement round");
        let witness = &ctx.violation.witness;
        // Protect every survivor announced for this round, then delete the
        // smallest unprotected vertex of the copy.
        for &(round, pos) in &self.pairs {
            if round == self.round {
                let &v = witness.get(pos - 1).ok_or_else(|| {
                    EngineError::InconsistentAdvice(format!(
                        "pair position {pos} exceeds copy size {}",
                        witness.len()
                    ))
                })?;
                self.protected.insert(v);
            }
        }
        let target = witness
            .iter()
            .copied()
            .find(|v| !self.protected.contains(v))
            .ok_or_else(|| {
                EngineError::InconsistentAdvice(
                    "every vertex of the detected copy is protected".into(),
                )
            })?;
        self.round += 1;
        Ok(Element::Vertex(target))
    }
}

/// Outcome of an advised run: the trace plus the advisor's promise.
#[derive(Debug, Clone)]
pub struct AdvisedRun {
    pub trace: Trace,
    pub opt: usize,
    pub bits_written: usize,
}

/// Advises and runs the naive strategy in the instance's mode.
pub fn run_with_naive(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    budget: SearchBudget,
    filler_seed: u64,
) -> Result<AdvisedRun, EngineError> {
    let report = naive_advisor(instance, f, budget)?;
    let bits_written = report.tape.bits_written();
    let mut tape = AdviceTape::from_bits(report.tape.written_bits().to_vec(), filler_seed);
    let mut algo = NaiveAlgorithm::new(f, instance.mode);
    let trace = run(instance, f, &mut algo, &mut tape)?;
    Ok(AdvisedRun { trace, opt: report.opt, bits_written })
}

/// Advises and runs the log strategy (node mode).
pub fn run_with_log(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    cert: &RamseyCertificate,
    budget: SearchBudget,
    filler_seed: u64,
) -> Result<AdvisedRun, EngineError> {
    let report = log_advisor(instance, f, cert, budget)?;
    let bits_written = report.tape.bits_written();
    let mut tape = AdviceTape::from_bits(report.tape.written_bits().to_vec(), filler_seed);
    let mut algo = LogAlgorithm::new(f, cert);
    let trace = run(instance, f, &mut algo, &mut tape)?;
    Ok(AdvisedRun { trace, opt: report.opt, bits_written })
}

/// Strategy names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    NaiveNode,
    NaiveEdge,
    Log,
    Greedy,
}

impl std::str::FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive-node" => Ok(StrategyKind::NaiveNode),
            "naive-edge" => Ok(StrategyKind::NaiveEdge),
            "log" => Ok(StrategyKind::Log),
            "greedy" => Ok(StrategyKind::Greedy),
            other => Err(format!(
                "unknown strategy '{other}' (expected naive-node, naive-edge, log, or greedy)"
            )),
        }
    }
}

impl std::fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StrategyKind::NaiveNode => "naive-node",
            StrategyKind::NaiveEdge => "naive-edge",
            StrategyKind::Log => "log",
            StrategyKind::Greedy => "greedy",
        };
        write!(f, "{name}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::obstruction::ramsey_bound;

    fn set(members: Vec<Graph>) -> ObstructionSet {
        ObstructionSet::reduced(members).unwrap()
    }

    /// Two triangle gadgets glued at a vertex each, side by side.
    fn two_triangle_gadgets() -> Graph {
        let gadget = Graph::complete(3).glue(0, &Graph::complete(3), 0).unwrap();
        gadget.disjoint_union(&gadget)
    }

    #[test]
    fn naive_node_is_optimal_and_writes_nine_bits_on_the_double_gadget() {
        let f = set(vec![Graph::complete(3)]);
        let instance = OnlineInstance::node(two_triangle_gadgets());
        let run = run_with_naive(&instance, &f, Default::default(), 0).unwrap();
        assert_eq!(run.opt, 2);
        assert_eq!(run.trace.deletions, 2);
        // Self-delimited 2 costs 5 bits; two indices of width 2 follow.
        assert_eq!(run.bits_written, 9);
        assert_eq!(run.trace.total_bits, 9);
    }

    #[test]
    fn naive_edge_on_a_path() {
        let f = set(vec![Graph::path(3)]);
        let instance = OnlineInstance::edge(Graph::path(3));
        let run = run_with_naive(&instance, &f, Default::default(), 0).unwrap();
        assert_eq!(run.opt, 1);
        assert_eq!(run.trace.deletions, 1);
        assert_eq!(naive_index_width(&f, Mode::Edge), 1);
        assert_eq!(run.bits_written, 3 + 1);
        assert_eq!(run.trace.total_bits, run.bits_written);
    }

    #[test]
    fn naive_node_on_a_free_instance_writes_only_the_zero() {
        let f = set(vec![Graph::complete(3)]);
        let instance = OnlineInstance::node(Graph::cycle(5));
        let run = run_with_naive(&instance, &f, Default::default(), 0).unwrap();
        assert_eq!(run.trace.deletions, 0);
        assert_eq!(run.bits_written, 1);
        assert_eq!(run.trace.total_bits, 1);
    }

    #[test]
    fn greedy_pays_double_on_a_late_glued_gadget() {
        // Glued at the highest reveal label, the cut vertex arrives too late
        // for greedy's first deletion.
        let f = set(vec![Graph::complete(3)]);
        let gadget = Graph::complete(3).glue(2, &Graph::complete(3), 2).unwrap();
        let instance = OnlineInstance::node(gadget);
        let trace = run(&instance, &f, &mut Greedy, &mut AdviceTape::new()).unwrap();
        assert_eq!(trace.deletions, 2);
        let naive = run_with_naive(&instance, &f, Default::default(), 0).unwrap();
        assert_eq!(naive.trace.deletions, 1);
    }

    #[test]
    fn log_strategy_matches_the_known_budget_on_the_joined_instance() {
        let f = set(vec![Graph::complete(3), Graph::empty(3)]);
        let cert = ramsey_bound(&f, 8).unwrap().unwrap();
        assert_eq!(cert.r, 6);
        let instance = OnlineInstance::node(Graph::complete(4).join(&Graph::cycle(5)));
        let run = run_with_log(&instance, &f, &cert, Default::default(), 0).unwrap();
        assert_eq!(run.opt, 4);
        assert_eq!(run.trace.deletions, 4);
        // selfdelim(4) = 7, survivor count field = 3, five pairs of 2+2 bits.
        assert_eq!(run.bits_written, 30);
        assert_eq!(run.trace.total_bits, 30);
        assert_eq!(log_budget(4, 5, 6, 3), 30);
        // The surviving five vertices are exactly the cycle.
        assert_eq!(
            run.trace.deleted_set(),
            vec![
                Element::Vertex(0),
                Element::Vertex(1),
                Element::Vertex(2),
                Element::Vertex(3)
            ]
        );
    }

    #[test]
    fn log_strategy_handles_free_instances() {
        let f = set(vec![Graph::complete(3), Graph::empty(3)]);
        let cert = ramsey_bound(&f, 8).unwrap().unwrap();
        let instance = OnlineInstance::node(Graph::cycle(5));
        let run = run_with_log(&instance, &f, &cert, Default::default(), 0).unwrap();
        assert_eq!(run.trace.deletions, 0);
        // selfdelim(0) = 1 plus the 3-bit survivor count; no pairs follow.
        assert_eq!(run.bits_written, 4);
        assert_eq!(run.trace.total_bits, 4);
    }

    #[test]
    fn log_advisor_rejects_edge_mode() {
        let f = set(vec![Graph::complete(3), Graph::empty(3)]);
        let cert = ramsey_bound(&f, 8).unwrap().unwrap();
        let instance = OnlineInstance::edge(Graph::complete(4));
        assert!(log_advisor(&instance, &f, &cert, Default::default()).is_err());
    }

    #[test]
    fn advised_runs_never_read_past_the_written_tape() {
        let f = set(vec![Graph::complete(3)]);
        let instance = OnlineInstance::node(two_triangle_gadgets());
        let mut traces = Vec::new();
        for filler_seed in [1, 77, 4096] {
            let run = run_with_naive(&instance, &f, Default::default(), filler_seed).unwrap();
            assert_eq!(run.trace.total_bits, run.bits_written);
            traces.push(run.trace);
        }
        assert_eq!(traces[0], traces[1]);
        assert_eq!(traces[1], traces[2]);
    }

    #[test]
    fn lazy_optimal_spends_exactly_the_optimum() {
        let f = set(vec![Graph::complete(3), Graph::empty(3)]);
        let g = Graph::complete(4).join(&Graph::cycle(5));
        let instance = OnlineInstance::node(g);
        let optimum = offline_optimum(&instance, &f, Default::default()).unwrap();
        let mut lazy = LazyOptimal::new(optimum.smallest());
        let trace = run(&instance, &f, &mut lazy, &mut AdviceTape::new()).unwrap();
        assert_eq!(trace.deletions, optimum.size);
        assert_eq!(
            trace.deleted_set(),
            optimum.smallest().to_vec()
        );
    }

    #[test]
    fn strategy_names_parse() {
        assert_eq!("naive-node".parse::<StrategyKind>().unwrap(), StrategyKind::NaiveNode);
        assert_eq!("log".parse::<StrategyKind>().unwrap(), StrategyKind::Log);
        assert!("clairvoyant".parse::<StrategyKind>().is_err());
    }
}
