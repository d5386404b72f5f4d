//! Machine checks for the structural claims behind the adversarial families:
//! extension axioms, optimum uniqueness, forced-action distinguishability,
//! and advice-bit audits.

use crate::advice::{field_width, AdviceTape};
use crate::engine::{run, Element, EngineError, OnlineInstance, Trace};
use crate::gadgets::{EExtension, Family};
use crate::graph::Graph;
use crate::iso::contains_induced;
use crate::obstruction::ObstructionSet;
use crate::offline::{offline_optimum, SearchBudget};
use crate::strategy::LazyOptimal;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("member {member} has {count} optima; the family claims a unique one")]
    NonUniqueOptimum { member: usize, count: usize },
    #[error("member {member}'s computed optimum differs from the family's claim")]
    WrongExpectedOptimum { member: usize },
    #[error("members {a} and {b} share an optimum and cannot force distinct actions")]
    DuplicateOptima { a: usize, b: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Checks the three extension axioms: the base embeds in `u`, no longer
/// embeds once the special edge is gone, yet survives every other
/// single-edge removal.
pub fn verify_e_extension(ext: &EExtension, h: &Graph) -> bool {
    if !contains_induced(h, &ext.u) {
        return false;
    }
    let (x, y) = ext.e;
    if !ext.u.has_edge(x, y) || contains_induced(h, &ext.u.without_edge(x, y)) {
        return false;
    }
    ext.u
        .edges()
        .into_iter()
        .filter(|&f| f != ext.e)
        .all(|(a, b)| contains_induced(h, &ext.u.without_edge(a, b)))
}

/// True iff the oracle finds exactly one optimum and it equals `expected`.
pub fn verify_unique_optimum(
    instance: &OnlineInstance,
    f: &ObstructionSet,
    expected: &[Element],
    budget: SearchBudget,
) -> Result<bool, EngineError> {
    let optimum = offline_optimum(instance, f, budget)?;
    let mut expected = expected.to_vec();
    expected.sort_unstable();
    Ok(optimum.solutions.len() == 1 && optimum.smallest() == expected.as_slice())
}

/// One settlement point of a forced run: how many reveals had happened, the
/// structure revealed so far, and what was deleted. Sequences of these are
/// the trie keys, so prefix sharing is checked structurally rather than
/// assumed from the generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StepToken {
    pub step: usize,
    /// Adjacency rows of the instance restricted to the revealed prefix.
    pub prefix_rows: Vec<u64>,
    /// Elements deleted during this step, in deletion order.
    pub deleted: Vec<Element>,
}

/// The forced actions of the unique lazily-replayed optimum.
fn forced_action_sequence(instance: &OnlineInstance, trace: &Trace) -> Vec<StepToken> {
    trace
        .steps
        .iter()
        .filter(|s| !s.events.is_empty())
        .map(|s| {
            let labels: Vec<usize> = (0..s.step).collect();
            let prefix = instance.graph.induced(&labels);
            StepToken {
                step: s.step,
                prefix_rows: (0..prefix.order()).map(|v| prefix.row(v)).collect(),
                deleted: s.events.iter().map(|e| e.deleted).collect(),
            }
        })
        .collect()
}

/// Spread of the trie depths at which distinct forced runs first part ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepthStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

/// What a family certification established.
#[derive(Debug, Clone, Serialize)]
pub struct DistinguishabilityReport {
    pub family_size: usize,
    /// Distinct forced action sequences.
    pub leaves: usize,
    /// Advice bits any optimal algorithm needs for this family.
    pub bits: usize,
    /// Token depths where adjacent distinct sequences diverge; absent when
    /// fewer than two leaves exist.
    pub divergence: Option<DepthStats>,
}

/// Certifies a family: every member's optimum is computed (and checked
/// unique and as claimed where the construction promises that), the lazy
/// replay of each optimum is traced, and the distinct forced action
/// sequences are counted as trie leaves.
pub fn verify_family(
    family: &Family,
    f: &ObstructionSet,
    budget: SearchBudget,
) -> Result<DistinguishabilityReport, VerifierError> {
    if family.unique_optimum {
        let mut seen = std::collections::BTreeMap::new();
        for (i, member) in family.members.iter().enumerate() {
            let mut key = member.expected_optimum.clone();
            key.sort_unstable();
            if let Some(&a) = seen.get(&key) {
                return Err(VerifierError::DuplicateOptima { a, b: i });
            }
            seen.insert(key, i);
        }
    }
    let sequences: Vec<Vec<StepToken>> = family
        .members
        .par_iter()
        .enumerate()
        .map(|(i, member)| -> Result<Vec<StepToken>, VerifierError> {
            let optimum = offline_optimum(&member.instance, f, budget)?;
            if family.unique_optimum {
                if optimum.solutions.len() != 1 {
                    return Err(VerifierError::NonUniqueOptimum {
                        member: i,
                        count: optimum.solutions.len(),
                    });
                }
                let mut expected = member.expected_optimum.clone();
                expected.sort_unstable();
                if optimum.smallest() != expected.as_slice() {
                    return Err(VerifierError::WrongExpectedOptimum { member: i });
                }
            }
            let mut lazy = LazyOptimal::new(optimum.smallest());
            let trace = run(&member.instance, f, &mut lazy, &mut AdviceTape::new())?;
            Ok(forced_action_sequence(&member.instance, &trace))
        })
        .collect::<Result<_, _>>()?;

    let mut distinct = sequences;
    distinct.sort();
    distinct.dedup();
    let leaves = distinct.len();
    let bits = if leaves <= 1 { 0 } else { field_width(leaves as u64) };
    debug_assert!(leaves <= family.members.len());

    let depths: Vec<usize> = distinct
        .windows(2)
        .map(|pair| pair[0].iter().zip(&pair[1]).take_while(|(a, b)| a == b).count())
        .collect();
    let divergence = depths.iter().copied().minmax().into_option().map(|(min, max)| DepthStats {
        min,
        max,
        mean: depths.iter().sum::<usize>() as f64 / depths.len() as f64,
    });
    Ok(DistinguishabilityReport { family_size: family.members.len(), leaves, bits, divergence })
}

/// True iff the trace consumed exactly the budgeted number of advice bits.
pub fn audit_bits(trace: &Trace, expected_budget: usize) -> bool {
    trace.total_bits == expected_budget
}
