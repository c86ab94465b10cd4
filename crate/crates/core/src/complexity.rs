//! Budgeted minimum-program search.
//!
//! Every value computed here is relative to a [`Budget`]: programs longer
//! than `max_len` are never tried, and each run gets `fuel` steps (TM
//! class) or `horizon` steps (ITM-1 class). "No witness" only means the
//! budget ran out.
//!
//! Programs are scanned one length tier at a time. The whole tier is
//! evaluated, in parallel, before the shortlex-least hit is chosen, so the
//! answer is the same as a sequential scan.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::codec::{decode_machine, Machine};
use crate::error::{Error, Result};
use crate::itm::embed::embed_tm;
use crate::itm::{itm_run, MachineITM};
use crate::problems::{Predicate, PredicateSet};
use crate::tm::{run_fueled, MachineTM};
use crate::universal::UniversalInterpreter;
use crate::words::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Budget {
    pub max_len: usize,
    pub fuel: u64,
    pub horizon: u64,
}

impl Budget {
    pub fn new(max_len: usize, fuel: u64, horizon: u64) -> Self {
        Budget { max_len, fuel, horizon }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 10, fuel: 5000, horizon: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ComplexityVerdict {
    Finite { value: usize, witness: Word },
    NoWitnessWithinBudget { budget: Budget },
}

impl ComplexityVerdict {
    pub fn value(&self) -> Option<usize> {
        match self {
            ComplexityVerdict::Finite { value, .. } => Some(*value),
            ComplexityVerdict::NoWitnessWithinBudget { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            ComplexityVerdict::Finite { witness, .. } => Some(witness),
            ComplexityVerdict::NoWitnessWithinBudget { .. } => None,
        }
    }

    /// The order in which every finite value lies below "no witness".
    pub fn at_most(&self, other: &ComplexityVerdict) -> bool {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => a <= b,
            (_, None) => true,
            (None, Some(_)) => false,
        }
    }
}

impl fmt::Display for ComplexityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityVerdict::Finite { value, witness } => write!(f, "{value} (witness {witness:?})"),
            ComplexityVerdict::NoWitnessWithinBudget { budget } => {
                write!(f, "no witness within max_len {} and fuel {}", budget.max_len, budget.fuel)
            }
        }
    }
}

/// Probe pairs `(x, f(x))` of a function on a finite domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionTable {
    pairs: Vec<(Word, Word)>,
}

impl FunctionTable {
    pub fn new(pairs: Vec<(Word, Word)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidTable("the probe domain is empty".into()));
        }
        let mut seen = HashSet::new();
        for (x, _) in &pairs {
            if !seen.insert(x) {
                let values: Vec<String> = pairs.iter().filter(|(y, _)| y == x).map(|(_, v)| format!("{v:?}")).collect();
                return Err(Error::InvalidTable(format!("probe {x:?} listed more than once, with values {}", values.join(", "))));
            }
        }
        Ok(FunctionTable { pairs })
    }

    /// Tabulates `f` on every word of length at most `probe_len`.
    pub fn tabulate(probe_len: usize, f: impl Fn(&Word) -> Word) -> Self {
        let pairs = Alphabet::binary().words_up_to(probe_len).map(|x| (x.clone(), f(&x))).collect();
        FunctionTable { pairs }
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }
}

impl fmt::Display for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(x, v)| format!("{x:?}->{v:?}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Header length added by the ITM-1 class in front of a TM program.
pub const K_EMBED: usize = 1;

/// A machine class together with its universal interpreter and its notion
/// of "the run produced a result".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineClassHandle {
    /// Turing machines under `U`. A run produces a result when it halts
    /// within the fuel.
    Tm(UniversalInterpreter),
    /// First-order inductive machines. `0 q` runs the standard TM program
    /// `q` compiled to an inductive machine; `1 pair(w, c)` runs the
    /// inductive machine coded by `c` on `w`. A run produces a result when
    /// it halts in a final state or its output is stable at the horizon.
    Itm1,
    /// `base` followed by the Turing machine `post` on its result.
    Composed { base: Box<MachineClassHandle>, post: MachineTM },
}

impl fmt::Display for MachineClassHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineClassHandle::Tm(u) => write!(f, "TM({u})"),
            MachineClassHandle::Itm1 => write!(f, "ITM1"),
            MachineClassHandle::Composed { base, post } => write!(f, "{base}+{}", post.name()),
        }
    }
}

fn run_itm_code(code: &Word, input: &Word, b: &Budget) -> Option<Word> {
    match decode_machine(code) {
        Ok(Machine::Itm(m)) => itm_run(&m, input, b.horizon).ok()?.result().cloned(),
        _ => None,
    }
}

fn run_embedded_tm(code: &Word, input: &Word, b: &Budget) -> Option<Word> {
    let table = match decode_machine(code) {
        Ok(Machine::Tm(MachineTM::Table(t))) => t,
        // Builtin TMs have no table to compile; run them as host processes.
        Ok(Machine::Tm(m)) => return run_fueled(&m, input, b.horizon).ok()?.output().cloned(),
        _ => return None,
    };
    let itm = MachineITM::Table(embed_tm(&table).ok()?);
    itm_run(&itm, input, b.horizon).ok()?.result().cloned()
}

impl MachineClassHandle {
    pub fn tm() -> Self {
        MachineClassHandle::Tm(UniversalInterpreter::Standard)
    }

    /// Runs program `p` and returns the word it produces within the budget.
    pub fn produce(&self, p: &Word, b: &Budget) -> Option<Word> {
        match self {
            MachineClassHandle::Tm(u) => u.apply(p, b.fuel).output().cloned(),
            MachineClassHandle::Itm1 => {
                let (&head, rest) = p.as_bytes().split_first()?;
                let rest = Word::from_bytes(rest.to_vec());
                let (w, code) = Alphabet::binary().unpair(&rest).ok()?;
                match head {
                    b'0' => run_embedded_tm(&code, &w, b),
                    _ => run_itm_code(&code, &w, b),
                }
            }
            MachineClassHandle::Composed { base, post } => {
                let w = base.produce(p, b)?;
                run_fueled(post, &w, b.fuel).ok()?.output().cloned()
            }
        }
    }

    /// Runs the payload-free program `p` on argument `x`.
    pub fn produce2(&self, p: &Word, x: &Word, b: &Budget) -> Option<Word> {
        match self {
            MachineClassHandle::Tm(u) => u.apply2(p, x, b.fuel).output().cloned(),
            MachineClassHandle::Itm1 => {
                let (&head, rest) = p.as_bytes().split_first()?;
                let (w, code) = Alphabet::binary().unpair(&Word::from_bytes(rest.to_vec())).ok()?;
                if !w.is_empty() {
                    return None;
                }
                match head {
                    b'0' => run_embedded_tm(&code, x, b),
                    _ => run_itm_code(&code, x, b),
                }
            }
            MachineClassHandle::Composed { base, post } => {
                let w = base.produce2(p, x, b)?;
                run_fueled(post, &w, b.fuel).ok()?.output().cloned()
            }
        }
    }
}

/// A verdict with the search statistics that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub kind: &'static str,
    pub value: Option<usize>,
    pub witness: Option<Word>,
    pub budget: Budget,
    pub class: String,
    pub predicate: String,
    pub programs_scanned: u64,
    pub runs_halted: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ComplexityReport {
    pub fn verdict(&self) -> ComplexityVerdict {
        match (&self.value, &self.witness) {
            (Some(value), Some(witness)) => ComplexityVerdict::Finite { value: *value, witness: witness.clone() },
            _ => ComplexityVerdict::NoWitnessWithinBudget { budget: self.budget },
        }
    }
}

/// Scans programs tier by tier; `accept(p)` reports whether `p` produced
/// something (first flag) and whether it is a witness (second flag).
fn scan(b: &Budget, accept: impl Fn(&Word) -> (bool, bool) + Sync) -> (ComplexityVerdict, u64, u64) {
    let alphabet = Alphabet::binary();
    let (mut scanned, mut halted) = (0u64, 0u64);
    for len in 0..=b.max_len {
        let tier: Vec<Word> = alphabet.words_of_len(len).collect();
        let results: Vec<(bool, bool)> = tier.par_iter().map(&accept).collect();
        scanned += tier.len() as u64;
        halted += results.iter().filter(|r| r.0).count() as u64;
        if let Some(i) = results.iter().position(|r| r.1) {
            return (ComplexityVerdict::Finite { value: len, witness: tier[i].clone() }, scanned, halted);
        }
    }
    (ComplexityVerdict::NoWitnessWithinBudget { budget: *b }, scanned, halted)
}

fn report(class: &MachineClassHandle, what: String, b: &Budget, found: (ComplexityVerdict, u64, u64)) -> ComplexityReport {
    let (verdict, programs_scanned, runs_halted) = found;
    ComplexityReport {
        kind: match verdict {
            ComplexityVerdict::Finite { .. } => "Finite",
            ComplexityVerdict::NoWitnessWithinBudget { .. } => "NoWitnessWithinBudget",
        },
        value: verdict.value(),
        witness: verdict.witness().cloned(),
        budget: *b,
        class: class.to_string(),
        predicate: what,
        programs_scanned,
        runs_halted,
        note: None,
    }
}

pub fn problem_complexity_report(class: &MachineClassHandle, p: &Predicate, b: &Budget) -> ComplexityReport {
    let found = scan(b, |prog| match class.produce(prog, b) {
        Some(w) => (true, p.eval(&w)),
        None => (false, false),
    });
    report(class, p.to_string(), b, found)
}

/// Length of the shortest program whose result satisfies `p`.
pub fn bounded_problem_complexity(class: &MachineClassHandle, p: &Predicate, b: &Budget) -> ComplexityVerdict {
    problem_complexity_report(class, p, b).verdict()
}

pub fn set_complexity_report(class: &MachineClassHandle, s: &PredicateSet, b: &Budget) -> ComplexityReport {
    let found = scan(b, |prog| match class.produce(prog, b) {
        Some(w) => (true, s.eval(&w)),
        None => (false, false),
    });
    report(class, s.to_string(), b, found)
}

/// Like [`bounded_problem_complexity`] for the conjunction of `s`.
pub fn bounded_set_problem_complexity(class: &MachineClassHandle, s: &PredicateSet, b: &Budget) -> ComplexityVerdict {
    set_complexity_report(class, s, b).verdict()
}

pub fn functional_complexity_report(class: &MachineClassHandle, table: &FunctionTable, b: &Budget) -> ComplexityReport {
    let found = scan(b, |prog| {
        let mut produced = false;
        for (x, fx) in table.pairs() {
            match class.produce2(prog, x, b) {
                Some(v) => {
                    produced = true;
                    if &v != fx {
                        return (true, false);
                    }
                }
                None => return (produced, false),
            }
        }
        (true, true)
    });
    let mut r = report(class, table.to_string(), b, found);
    r.note = Some(format!("checked on a finite probe domain of {} words; the true value may be larger", table.pairs().len()));
    r
}

/// Length of the shortest payload-free program that computes every probe
/// of `table`.
pub fn bounded_functional_complexity(class: &MachineClassHandle, table: &FunctionTable, b: &Budget) -> ComplexityVerdict {
    functional_complexity_report(class, table, b).verdict()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapRow {
    pub predicate: String,
    pub under_first: ComplexityVerdict,
    pub under_second: ComplexityVerdict,
    /// `C_2 - C_1`, when both sides are finite.
    pub difference: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub first: String,
    pub second: String,
    /// Least `k >= 0` with `C_2 <= C_1 + k` on every comparable row, or
    /// `None` when no row is comparable.
    pub k: Option<u64>,
    pub rows: Vec<GapRow>,
    pub warnings: Vec<String>,
}

/// Measures how much longer programs get when switching from `u1` to `u2`.
pub fn invariance_gap(u1: &UniversalInterpreter, u2: &UniversalInterpreter, family: &[Predicate], b: &Budget) -> InvarianceReport {
    let (c1, c2) = (MachineClassHandle::Tm(u1.clone()), MachineClassHandle::Tm(u2.clone()));
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for p in family {
        let (v1, v2) = (bounded_problem_complexity(&c1, p, b), bounded_problem_complexity(&c2, p, b));
        let difference = match (v1.value(), v2.value()) {
            (Some(a), Some(c)) => Some(c as i64 - a as i64),
            (None, None) => None,
            _ => {
                warnings.push(format!("{p}: finite under only one interpreter, gap undefined"));
                None
            }
        };
        rows.push(GapRow { predicate: p.to_string(), under_first: v1, under_second: v2, difference });
    }
    let k = rows.iter().filter_map(|r| r.difference).max().map(|d| d.max(0) as u64);
    InvarianceReport { first: u1.to_string(), second: u2.to_string(), k, rows, warnings }
}

/// The class that runs `class` and then feeds the result to `post`.
pub fn compose_postprocess(class: &MachineClassHandle, post: MachineTM) -> MachineClassHandle {
    MachineClassHandle::Composed { base: Box::new(class.clone()), post }
}

/// Verdicts for `family(n)` over `range`.
pub fn growth_profile(
    class: &MachineClassHandle,
    family: impl Fn(u64) -> Predicate,
    range: std::ops::RangeInclusive<u64>,
    b: &Budget,
) -> Vec<(u64, ComplexityVerdict)> {
    range.map(|n| (n, bounded_problem_complexity(class, &family(n), b))).collect()
}

/// Budgeted complexity of every word of length at most `word_len`.
pub fn kolmogorov_table(class: &MachineClassHandle, word_len: usize, b: &Budget) -> Vec<(Word, ComplexityVerdict)> {
    Alphabet::binary()
        .words_up_to(word_len)
        .map(|u| {
            let v = bounded_problem_complexity(class, &Predicate::Equals(u.clone()), b);
            (u, v)
        })
        .collect()
}
