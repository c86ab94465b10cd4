//! Universal interpreters for the Turing machine class.
//!
//! An interpreter maps a program word to a run. Programs that do not
//! decode never halt: [`UniversalInterpreter::apply`] reports them as
//! `OutOfFuel` at every fuel, so they can never witness a complexity
//! minimum. Decoding is free; fuel counts simulated machine steps only.

use std::fmt;

use crate::codec::{decode_tm, encode_tm};
use crate::error::Result;
use crate::tm::{run_fueled, MachineTM, RunOutcome};
use crate::words::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalInterpreter {
    /// `U(pair(w, c(T))) = T(w)`.
    Standard,
    /// Accepts `header · p` and hands `p` to the inner interpreter.
    Wrapped { header: Word, inner: Box<UniversalInterpreter> },
    /// Diverges below length `n`, answers `0` on `0^n`, and otherwise drops
    /// the first `n` symbols before running the standard interpreter.
    Biased { n: usize },
}

impl fmt::Display for UniversalInterpreter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniversalInterpreter::Standard => write!(f, "U_std"),
            UniversalInterpreter::Wrapped { header, inner } => write!(f, "wrap[{header}]({inner})"),
            UniversalInterpreter::Biased { n } => write!(f, "U_biased({n})"),
        }
    }
}

fn diverge(fuel: u64) -> RunOutcome {
    RunOutcome::OutOfFuel { steps: fuel }
}

fn run_decoded(code: &Word, input: &Word, fuel: u64) -> RunOutcome {
    match decode_tm(code) {
        Ok(t) => run_fueled(&t, input, fuel).unwrap_or(diverge(fuel)),
        Err(_) => diverge(fuel),
    }
}

impl UniversalInterpreter {
    /// Runs program `p`.
    pub fn apply(&self, p: &Word, fuel: u64) -> RunOutcome {
        match self {
            UniversalInterpreter::Standard => match Alphabet::binary().unpair(p) {
                Ok((w, code)) => run_decoded(&code, &w, fuel),
                Err(_) => diverge(fuel),
            },
            UniversalInterpreter::Wrapped { header, inner } => match p.strip_prefix(header) {
                Some(rest) => inner.apply(&rest, fuel),
                None => diverge(fuel),
            },
            UniversalInterpreter::Biased { n } => {
                if p.len() < *n {
                    diverge(fuel)
                } else if p.as_bytes().iter().all(|&s| s == b'0') && p.len() == *n {
                    RunOutcome::Halted { output: Word::from_str_unchecked("0"), steps: 0 }
                } else {
                    let rest = Word::from_bytes(p.as_bytes()[*n..].to_vec());
                    UniversalInterpreter::Standard.apply(&rest, fuel)
                }
            }
        }
    }

    /// Runs program `p` on a separately supplied argument `x`. The program
    /// must carry no payload: for the standard interpreter `p = sd(c(T))`.
    pub fn apply2(&self, p: &Word, x: &Word, fuel: u64) -> RunOutcome {
        match self {
            UniversalInterpreter::Standard => match Alphabet::binary().unpair(p) {
                Ok((w, code)) if w.is_empty() => run_decoded(&code, x, fuel),
                _ => diverge(fuel),
            },
            UniversalInterpreter::Wrapped { header, inner } => match p.strip_prefix(header) {
                Some(rest) => inner.apply2(&rest, x, fuel),
                None => diverge(fuel),
            },
            UniversalInterpreter::Biased { n } => {
                if p.len() < *n {
                    diverge(fuel)
                } else if p.as_bytes().iter().all(|&s| s == b'0') && p.len() == *n {
                    RunOutcome::Halted { output: Word::from_str_unchecked("0"), steps: 0 }
                } else {
                    let rest = Word::from_bytes(p.as_bytes()[*n..].to_vec());
                    UniversalInterpreter::Standard.apply2(&rest, x, fuel)
                }
            }
        }
    }

    /// Extra program length this interpreter adds on top of the standard one.
    pub fn overhead(&self) -> usize {
        match self {
            UniversalInterpreter::Standard => 0,
            UniversalInterpreter::Wrapped { header, inner } => header.len() + inner.overhead(),
            UniversalInterpreter::Biased { n } => *n,
        }
    }

    /// A program that makes this interpreter run `m` on `w`.
    pub fn program_for(&self, m: &MachineTM, w: &Word) -> Result<Word> {
        let a = Alphabet::binary();
        Ok(match self {
            UniversalInterpreter::Standard => a.pair(w, &encode_tm(m)?)?,
            UniversalInterpreter::Wrapped { header, inner } => header.concat(&inner.program_for(m, w)?),
            UniversalInterpreter::Biased { n } => {
                Word::from_bytes(vec![b'0'; *n]).concat(&UniversalInterpreter::Standard.program_for(m, w)?)
            }
        })
    }
}

/// Runs `p` under `u`.
pub fn universal_apply(u: &UniversalInterpreter, p: &Word, fuel: u64) -> RunOutcome {
    u.apply(p, fuel)
}

/// Runs the payload-free program `p` under `u` on argument `x`.
pub fn universal_apply2(u: &UniversalInterpreter, p: &Word, x: &Word, fuel: u64) -> RunOutcome {
    u.apply2(p, x, fuel)
}

/// The header used by [`wrap_universal`].
pub const WRAP_HEADER: &str = "1";

/// A second universal interpreter that expects the one-symbol header `1`.
/// Its `k_wrap` is [`UniversalInterpreter::overhead`] minus the inner one.
pub fn wrap_universal(inner: UniversalInterpreter) -> UniversalInterpreter {
    UniversalInterpreter::Wrapped { header: Word::from_str_unchecked(WRAP_HEADER), inner: Box::new(inner) }
}

/// A universal interpreter whose complexity of `x < z` is exactly `n` for
/// every `z` after `0`.
///
/// # Panics
/// Panics when `n` is zero.
pub fn make_biased_universal(n: usize) -> UniversalInterpreter {
    assert!(n >= 1, "the biased interpreter needs n >= 1");
    UniversalInterpreter::Biased { n }
}
