//! The standard machine library used by tests, examples and the CLI.
//!
//! Ground truth for each machine follows from its table alone:
//!
//! | machine | halts on | output |
//! |---------|----------|--------|
//! | [`identity`] | every input | the input |
//! | [`const_zero`] | every input | `0` |
//! | [`const_empty`] | every input | `ε` |
//! | [`never`] | no input | |
//! | [`halts_on_empty_only`] | `ε` | `ε` |
//! | [`halts_on_x3_only`] | `1`, the third word in shortlex order | `ε` |

use crate::codec::{compile_ops, Op};
use crate::itm::{BuiltinMemory, ItmBuilder, ItmTable, MemorySpec};
use crate::tm::{MachineTM, TmBuilder, TmTable};
use crate::words::{Alphabet, BLANK};

/// `E`, computing `e(x) = x`.
pub fn identity() -> TmTable {
    compile_ops("E", &[Op::Copy])
}

pub fn const_zero() -> TmTable {
    compile_ops("C0", &[Op::Emit0])
}

pub fn const_empty() -> TmTable {
    compile_ops("Ceps", &[])
}

/// Appends `0` to its input. Used as a post-processor.
pub fn append_zero() -> TmTable {
    compile_ops("append0", &[Op::Copy, Op::Emit0])
}

/// Spins in its start state on every symbol.
pub fn never() -> TmTable {
    let mut b = TmBuilder::new("T_never", Alphabet::binary());
    b.start("q0");
    for r in ["0__", "1__", "___"] {
        b.rule("q0", r, "q0", r, "SSS").expect("fixed table");
    }
    b.build().expect("fixed table")
}

pub fn halts_on_empty_only() -> TmTable {
    let mut b = TmBuilder::new("T_halts_on_eps_only", Alphabet::binary());
    b.start("q0").final_state("f");
    b.rule("q0", "___", "f", "___", "SSS").expect("fixed table");
    for r in ["0__", "1__"] {
        b.rule("q0", r, "q0", r, "SSS").expect("fixed table");
    }
    b.build().expect("fixed table")
}

pub fn halts_on_x3_only() -> TmTable {
    let mut b = TmBuilder::new("T_halts_on_x3_only", Alphabet::binary());
    b.start("q0").final_state("f");
    b.rule("q0", "1__", "q1", "1__", "RSS").expect("fixed table");
    b.rule("q1", "___", "f", "___", "SSS").expect("fixed table");
    for r in ["0__", "___"] {
        b.rule("q0", r, "q0", r, "SSS").expect("fixed table");
    }
    for r in ["0__", "1__"] {
        b.rule("q1", r, "q1", r, "SSS").expect("fixed table");
    }
    b.build().expect("fixed table")
}

/// Non-final start state with no rules at all.
pub fn blocked() -> TmTable {
    let mut b = TmBuilder::new("T_blocked", Alphabet::binary());
    b.start("q0");
    b.build().expect("fixed table")
}

/// A pool entry with its ground truth.
#[derive(Clone, Debug)]
pub struct PoolMachine {
    pub machine: MachineTM,
    /// Halts on every input.
    pub total: bool,
}

/// The six-machine pool: three total machines followed by three non-total.
pub fn standard_pool() -> Vec<PoolMachine> {
    let total = [identity(), const_zero(), const_empty()];
    let partial = [never(), halts_on_empty_only(), halts_on_x3_only()];
    total
        .into_iter()
        .map(|t| PoolMachine { machine: t.into(), total: true })
        .chain(partial.into_iter().map(|t| PoolMachine { machine: t.into(), total: false }))
        .collect()
}

fn linear(name: &str) -> ItmBuilder {
    ItmBuilder::new(name, Alphabet::binary(), MemorySpec::Builtin(BuiltinMemory::Linear), &["L", "R", "U", "D"])
}

/// Walks down to the output row, writes `1` on its third step, then spins
/// without touching the output again.
pub fn writer() -> ItmTable {
    let mut b = linear("writer");
    b.start("q0");
    for s in [b'0', b'1', BLANK] {
        b.rule("q0", s, None, Some("D"), "q1").expect("fixed table");
    }
    b.rule("q1", BLANK, None, Some("D"), "q2").expect("fixed table");
    b.rule("q2", BLANK, Some(b'1'), None, "spin").expect("fixed table");
    b.rule("spin", b'1', Some(b'1'), None, "spin").expect("fixed table");
    b.build().expect("fixed table")
}

/// Toggles its output between `1` and `0` forever.
pub fn alternator() -> ItmTable {
    let mut b = linear("alternator");
    b.start("q0");
    for s in [b'0', b'1', BLANK] {
        b.rule("q0", s, None, Some("D"), "q1").expect("fixed table");
    }
    b.rule("q1", BLANK, None, Some("D"), "flip").expect("fixed table");
    b.rule("flip", BLANK, Some(b'1'), None, "flip").expect("fixed table");
    b.rule("flip", b'1', Some(b'0'), None, "flip").expect("fixed table");
    b.rule("flip", b'0', Some(b'1'), None, "flip").expect("fixed table");
    b.build().expect("fixed table")
}

/// Walks right along the input row forever and never writes output.
pub fn silent() -> ItmTable {
    let mut b = linear("silent");
    b.start("q");
    for s in [b'0', b'1', BLANK] {
        b.rule("q", s, None, Some("R"), "q").expect("fixed table");
    }
    b.build().expect("fixed table")
}

/// Writes `1` twice with a `0` in between and then halts in a final state.
/// Its output sequence is `ε, 1, 0, 1`.
pub fn writer_final() -> ItmTable {
    let mut b = linear("writer_final");
    b.start("q0").final_state("done");
    for s in [b'0', b'1', BLANK] {
        b.rule("q0", s, None, Some("D"), "q1").expect("fixed table");
    }
    b.rule("q1", BLANK, None, Some("D"), "q2").expect("fixed table");
    b.rule("q2", BLANK, Some(b'1'), None, "q3").expect("fixed table");
    b.rule("q3", b'1', Some(b'0'), None, "q4").expect("fixed table");
    b.rule("q4", b'0', Some(b'1'), None, "done").expect("fixed table");
    b.build().expect("fixed table")
}

fn constant_decider(name: &str, answer: u8) -> ItmTable {
    let mut b = linear(name);
    b.start("q0").final_state("q3");
    for s in [b'0', b'1', BLANK] {
        b.rule("q0", s, None, Some("D"), "q1").expect("fixed table");
    }
    b.rule("q1", BLANK, None, Some("D"), "q2").expect("fixed table");
    b.rule("q2", BLANK, Some(answer), None, "q3").expect("fixed table");
    b.build().expect("fixed table")
}

/// Claims that every machine gives a result.
pub fn const_one_decider() -> ItmTable {
    constant_decider("D_const1", b'1')
}

/// Claims that no machine gives a result.
pub fn const_zero_decider() -> ItmTable {
    constant_decider("D_const0", b'0')
}
