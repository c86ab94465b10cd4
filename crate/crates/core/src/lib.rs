//! Fuel-bounded problem complexity and inductive Turing machines.
//!
//! The crate simulates deterministic three-tape Turing machines and
//! first-order inductive Turing machines, measures budget-relative problem
//! complexity by exhaustive shortest-program search, and runs executable
//! versions of the classical inductive constructions: dovetailed
//! enumeration of non-total machines, the emptiness and totality solvers,
//! the diagonal pipeline, and the reduction from inductive results to
//! totality.
//!
//! Start with [`words`] and [`codec`] for the program space, [`tm`] and
//! [`universal`] for execution, [`complexity`] for the searches, and
//! [`hierarchy`] for the inductive constructions.

pub mod cli;
pub mod codec;
pub mod complexity;
pub mod error;
pub mod hierarchy;
pub mod itm;
pub mod machines;
pub mod problems;
pub mod process;
pub mod tm;
pub mod universal;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Word};
