//! Workbench for online delayed obstruction-deletion problems with advice.
//!
//! An adversary reveals the vertices of a graph one at a time. Whenever the
//! revealed part (minus everything deleted so far) contains a forbidden
//! induced subgraph, the algorithm must delete vertices (or edges) until it is
//! clean again. Deletions are irrevocable; the goal is to delete as little as
//! possible. Algorithms may read bits from an advice tape written by an
//! advisor that knows the whole input.
//!
//! The crate provides the model ([`engine`]), tape encodings ([`advice`]),
//! advisor/algorithm pairs matching known bit budgets ([`strategy`]),
//! generators for adversarial instance families ([`gadgets`]), and byte-level
//! certification of the families' distinguishing power ([`verifier`]).

pub mod advice;
pub mod engine;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod iso;
pub mod obstruction;
pub mod offline;
pub mod strategy;
pub mod verifier;

pub use graph::Graph;
pub use obstruction::ObstructionSet;
