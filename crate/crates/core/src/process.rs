//! The step-wise execution interface shared by every machine kind.
//!
//! Table machines, host-level builtin machines and the nested simulations
//! inside them all run through [`Process`], so a simulating machine can
//! advance a simulated one exactly one step at a time.

use crate::words::Word;

/// Control status observed before the next step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A step is possible.
    Ready,
    /// The control device is in a final state.
    Final,
    /// Non-final and no rule applies.
    Stuck,
}

pub trait Process: Send {
    fn status(&self) -> Status;

    /// Performs one step. Only called while [`Process::status`] is `Ready`.
    fn step(&mut self);

    /// The word currently held in the output register or output tape.
    fn output(&self) -> Word;

    /// Counter bumped whenever the output may have changed. Lets observers
    /// skip rebuilding the output word on quiet steps.
    fn output_epoch(&self) -> u64;
}
