//! Executable inductive constructions: enumeration of non-total machines,
//! halting, emptiness and totality solvers, the transformers between
//! totality and infinity problems, the reduction from inductive results to
//! totality, the diagonal pipeline and the order table.

pub mod diagonal;
pub mod dovetail;
pub mod orders;
pub mod solvers;
pub mod transformers;

use serde::Serialize;

use crate::words::Word;

pub use diagonal::{build_diagonal, candidate_deciders, diagonal_experiment, DiagonalReport};
pub use dovetail::{dovetail_nontotal, Dovetailer, EnumerationList};
pub use orders::{composition_bound, order_lookup, order_table, OrderRow};
pub use solvers::{emptiness_solver, halting_itm, limit_halting_verdict, totality_verdict};
pub use transformers::{build_range_enumerator, build_reduction_tm, build_totalizer, reduction_check, ReductionReport};

/// The answer of an inductive solver at a budget. It is an approximation:
/// the value is what the output shows when the budget runs out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductiveVerdict {
    pub value: Option<Word>,
    /// When the value last changed, in the solver's own unit (steps or
    /// cycles).
    pub stabilized_since: Option<u64>,
    pub budget: u64,
    /// The solver stopped in a final state, so the value is definitive.
    pub halted: bool,
}
