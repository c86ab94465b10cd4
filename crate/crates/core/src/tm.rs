//! Deterministic three-tape Turing machines and fueled execution.
//!
//! Tape 0 holds the input and is read-only, tape 1 is scratch, tape 2 is
//! the output tape. A machine is either a transition table or one of the
//! host-level builtins that simulate other machines (see
//! [`crate::hierarchy::transformers`]).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::transformers::{RangeEnumeratorProcess, ReductionProcess, TotalizerProcess};
use crate::itm::MachineITM;
use crate::process::{Process, Status};
use crate::words::{Alphabet, Word, BLANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    Stay,
    Left,
    Right,
}

impl Move {
    pub fn delta(self) -> i64 {
        match self {
            Move::Stay => 0,
            Move::Left => -1,
            Move::Right => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Stay => 'S',
            Move::Left => 'L',
            Move::Right => 'R',
        }
    }

    pub fn from_letter(c: &str) -> Option<Move> {
        match c {
            "S" => Some(Move::Stay),
            "L" => Some(Move::Left),
            "R" => Some(Move::Right),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TmAction {
    pub next: usize,
    pub write: [u8; 3],
    pub moves: [Move; 3],
}

/// A transition-table machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmTable {
    pub name: String,
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub start: usize,
    pub finals: BTreeSet<usize>,
    pub rules: BTreeMap<(usize, [u8; 3]), TmAction>,
}

impl TmTable {
    /// Validates the table invariants: declared states, known symbols,
    /// a read-only input tape and no erasure on the output tape.
    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if n == 0 {
            return Err(Error::InvalidMachine("no states".into()));
        }
        if self.start >= n {
            return Err(Error::InvalidMachine("start state out of range".into()));
        }
        if let Some(f) = self.finals.iter().find(|&&f| f >= n) {
            return Err(Error::InvalidMachine(format!("final state {f} out of range")));
        }
        let sym_ok = |s: u8| s == BLANK || self.alphabet.contains(s);
        for ((q, read), act) in &self.rules {
            let here = &self.states[*q];
            if act.next >= n {
                return Err(Error::InvalidMachine(format!("rule from {here} targets unknown state")));
            }
            if !read.iter().chain(act.write.iter()).all(|&s| sym_ok(s)) {
                return Err(Error::InvalidMachine(format!("rule from {here} uses a symbol outside the alphabet")));
            }
            if act.write[0] != read[0] {
                return Err(Error::InvalidMachine(format!("rule from {here} writes to the read-only input tape")));
            }
            if act.write[2] == BLANK && read[2] != BLANK {
                return Err(Error::InvalidMachine(format!("rule from {here} erases an output cell")));
            }
        }
        Ok(())
    }

    /// Renumbers states breadth-first from the start state, visiting rules
    /// in key order, and drops unreachable states.
    pub fn canonicalize(&self) -> TmTable {
        let mut order = vec![self.start];
        let mut index = BTreeMap::from([(self.start, 0usize)]);
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            for (_, act) in self.rules.range((q, [0; 3])..=(q, [u8::MAX; 3])) {
                if !index.contains_key(&act.next) {
                    index.insert(act.next, order.len());
                    order.push(act.next);
                    queue.push_back(act.next);
                }
            }
        }
        let rules = self
            .rules
            .iter()
            .filter_map(|((q, r), a)| {
                let q2 = *index.get(q)?;
                Some(((q2, *r), TmAction { next: index[&a.next], ..a.clone() }))
            })
            .collect();
        TmTable {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            states: (0..order.len()).map(|i| format!("q{i}")).collect(),
            start: 0,
            finals: self.finals.iter().filter_map(|f| index.get(f).copied()).collect(),
            rules,
        }
    }

    /// Structural equality ignoring the machine name.
    pub fn same_table(&self, other: &TmTable) -> bool {
        self.alphabet == other.alphabet
            && self.states == other.states
            && self.start == other.start
            && self.finals == other.finals
            && self.rules == other.rules
    }

    /// True when no final state is reachable from the start state through
    /// the rule graph, which proves the machine never halts with a result.
    pub fn final_unreachable(&self) -> bool {
        let c = self.canonicalize();
        c.finals.is_empty()
    }
}

/// A Turing machine: a table or a host-level builtin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineTM {
    Table(TmTable),
    /// Enumerates the range of the inner machine: on `x_n` it outputs the
    /// n-th distinct value discovered by dovetailing.
    RangeEnumerator(Box<MachineTM>),
    /// On `x_n` computes the inner machine on `x_1 .. x_n` in turn and
    /// outputs the last value.
    Totalizer(Box<MachineTM>),
    /// Simulates an inductive machine on a fixed word and answers with the
    /// n-th value of its output sequence once a later value appears.
    Reduction { itm: Box<MachineITM>, x: Word },
}

impl MachineTM {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            MachineTM::Table(t) => t.alphabet.clone(),
            _ => Alphabet::binary(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MachineTM::Table(t) => t.name.clone(),
            MachineTM::RangeEnumerator(m) => format!("range({})", m.name()),
            MachineTM::Totalizer(m) => format!("totalizer({})", m.name()),
            MachineTM::Reduction { x, .. } => format!("reduction({x})"),
        }
    }

    pub fn as_table(&self) -> Option<&TmTable> {
        match self {
            MachineTM::Table(t) => Some(t),
            _ => None,
        }
    }

    /// Loads `input` and returns a process positioned before the first step.
    pub fn start(&self, input: &Word) -> Result<Box<dyn Process>> {
        self.alphabet().validate(input)?;
        Ok(match self {
            MachineTM::Table(t) => Box::new(TableProcess::new(t.clone(), input)),
            MachineTM::RangeEnumerator(m) => Box::new(RangeEnumeratorProcess::new((**m).clone(), input)?),
            MachineTM::Totalizer(m) => Box::new(TotalizerProcess::new((**m).clone(), input)?),
            MachineTM::Reduction { itm, x } => Box::new(ReductionProcess::new((**itm).clone(), x.clone(), input)?),
        })
    }
}

impl From<TmTable> for MachineTM {
    fn from(t: TmTable) -> Self {
        MachineTM::Table(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RunOutcome {
    Halted { output: Word, steps: u64 },
    OutOfFuel { steps: u64 },
    NoResult { steps: u64 },
}

impl RunOutcome {
    pub fn steps(&self) -> u64 {
        match self {
            RunOutcome::Halted { steps, .. } | RunOutcome::OutOfFuel { steps } | RunOutcome::NoResult { steps } => *steps,
        }
    }

    pub fn output(&self) -> Option<&Word> {
        match self {
            RunOutcome::Halted { output, .. } => Some(output),
            _ => None,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }

    /// The machine stopped, with or without a result.
    pub fn stopped(&self) -> bool {
        !matches!(self, RunOutcome::OutOfFuel { .. })
    }
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunOutcome::Halted { output, steps } => write!(f, "halted with {output:?} after {steps} steps"),
            RunOutcome::OutOfFuel { steps } => write!(f, "out of fuel after {steps} steps"),
            RunOutcome::NoResult { steps } => write!(f, "no result: stuck after {steps} steps"),
        }
    }
}

/// Drives any process for at most `fuel` steps.
pub fn drive(p: &mut dyn Process, fuel: u64) -> RunOutcome {
    let mut steps = 0;
    loop {
        match p.status() {
            Status::Final => return RunOutcome::Halted { output: p.output(), steps },
            Status::Stuck => return RunOutcome::NoResult { steps },
            Status::Ready if steps == fuel => return RunOutcome::OutOfFuel { steps },
            Status::Ready => {
                p.step();
                steps += 1;
            }
        }
    }
}

/// Runs `m` on `input` for at most `fuel` steps.
pub fn run_fueled(m: &MachineTM, input: &Word, fuel: u64) -> Result<RunOutcome> {
    let mut p = m.start(input)?;
    Ok(drive(p.as_mut(), fuel))
}

/// A two-way infinite tape stored as two stacks around cell 0.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tape {
    right: Vec<u8>,
    left: Vec<u8>,
    pos: i64,
}

impl Tape {
    pub(crate) fn with_word(w: &Word) -> Self {
        Tape { right: w.as_bytes().to_vec(), left: Vec::new(), pos: 0 }
    }

    pub(crate) fn read(&self) -> u8 {
        let cell = if self.pos >= 0 {
            self.right.get(self.pos as usize)
        } else {
            self.left.get((-self.pos - 1) as usize)
        };
        cell.copied().unwrap_or(BLANK)
    }

    pub(crate) fn write(&mut self, s: u8) {
        let (v, i) = if self.pos >= 0 {
            (&mut self.right, self.pos as usize)
        } else {
            (&mut self.left, (-self.pos - 1) as usize)
        };
        if i >= v.len() {
            if s == BLANK {
                return;
            }
            v.resize(i + 1, BLANK);
        }
        v[i] = s;
    }

    pub(crate) fn shift(&mut self, m: Move) {
        self.pos += m.delta();
    }

    /// Non-blank cells from left to right.
    pub(crate) fn non_blank(&self) -> Word {
        let bytes = self.left.iter().rev().chain(&self.right).copied().filter(|&s| s != BLANK).collect();
        Word::from_bytes(bytes)
    }
}

pub(crate) struct TableProcess {
    table: TmTable,
    state: usize,
    tapes: [Tape; 3],
    epoch: u64,
}

impl TableProcess {
    pub(crate) fn new(table: TmTable, input: &Word) -> Self {
        let state = table.start;
        TableProcess { table, state, tapes: [Tape::with_word(input), Tape::default(), Tape::default()], epoch: 0 }
    }

    fn read(&self) -> [u8; 3] {
        [self.tapes[0].read(), self.tapes[1].read(), self.tapes[2].read()]
    }
}

impl Process for TableProcess {
    fn status(&self) -> Status {
        if self.table.finals.contains(&self.state) {
            Status::Final
        } else if self.table.rules.contains_key(&(self.state, self.read())) {
            Status::Ready
        } else {
            Status::Stuck
        }
    }

    fn step(&mut self) {
        let key = (self.state, self.read());
        let act = &self.table.rules[&key];
        if act.write[2] != key.1[2] {
            self.epoch += 1;
        }
        for t in 0..3 {
            self.tapes[t].write(act.write[t]);
            self.tapes[t].shift(act.moves[t]);
        }
        self.state = act.next;
    }

    fn output(&self) -> Word {
        self.tapes[2].non_blank()
    }

    fn output_epoch(&self) -> u64 {
        self.epoch
    }
}

/// Incremental builder for transition tables, used by the standard machine
/// library, the op-form compiler and the machine-file parser.
#[derive(Clone, Debug)]
pub struct TmBuilder {
    name: String,
    alphabet: Alphabet,
    states: Vec<String>,
    start: Option<usize>,
    finals: BTreeSet<usize>,
    rules: BTreeMap<(usize, [u8; 3]), TmAction>,
}

impl TmBuilder {
    pub fn new(name: &str, alphabet: Alphabet) -> Self {
        TmBuilder {
            name: name.to_string(),
            alphabet,
            states: Vec::new(),
            start: None,
            finals: BTreeSet::new(),
            rules: BTreeMap::new(),
        }
    }

    /// Index of the named state, declaring it on first use.
    pub fn state(&mut self, name: &str) -> usize {
        match self.states.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.states.push(name.to_string());
                self.states.len() - 1
            }
        }
    }

    pub fn start(&mut self, name: &str) -> &mut Self {
        let q = self.state(name);
        self.start = Some(q);
        self
    }

    pub fn final_state(&mut self, name: &str) -> &mut Self {
        let q = self.state(name);
        self.finals.insert(q);
        self
    }

    /// Adds a rule; `read` and `write` are three-symbol strings and `moves`
    /// three letters from `L`, `R`, `S`.
    pub fn rule(&mut self, from: &str, read: &str, to: &str, write: &str, moves: &str) -> Result<&mut Self> {
        let triple = |s: &str| -> Result<[u8; 3]> {
            s.as_bytes().try_into().map_err(|_| Error::InvalidMachine(format!("expected three symbols, got {s:?}")))
        };
        let read = triple(read)?;
        let write = triple(write)?;
        let mv: Vec<Move> = moves
            .chars()
            .map(|c| Move::from_letter(&c.to_string()).ok_or_else(|| Error::InvalidMachine(format!("bad move {c:?}"))))
            .collect::<Result<_>>()?;
        let moves: [Move; 3] = mv.try_into().map_err(|_| Error::InvalidMachine("expected three moves".into()))?;
        let q = self.state(from);
        let next = self.state(to);
        self.insert(q, read, TmAction { next, write, moves })?;
        Ok(self)
    }

    pub(crate) fn insert(&mut self, q: usize, read: [u8; 3], act: TmAction) -> Result<()> {
        if self.rules.contains_key(&(q, read)) {
            return Err(Error::Determinism(format!(
                "two rules for state {} reading {}",
                self.states[q],
                String::from_utf8_lossy(&read)
            )));
        }
        self.rules.insert((q, read), act);
        Ok(())
    }

    pub fn build(&self) -> Result<TmTable> {
        let start = self.start.ok_or_else(|| Error::InvalidMachine("no start state".into()))?;
        let t = TmTable {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            start,
            finals: self.finals.clone(),
            rules: self.rules.clone(),
        };
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn identity_file_machine() -> MachineTM {
        let mut b = TmBuilder::new("id", Alphabet::binary());
        b.start("copy").final_state("done");
        b.rule("copy", "0__", "copy", "0_0", "RSR").unwrap();
        b.rule("copy", "1__", "copy", "1_1", "RSR").unwrap();
        b.rule("copy", "___", "done", "___", "SSS").unwrap();
        b.build().unwrap().into()
    }

    fn never() -> MachineTM {
        let mut b = TmBuilder::new("never", Alphabet::binary());
        b.start("q");
        for r in ["0__", "1__", "___"] {
            b.rule("q", r, "q", r, "SSS").unwrap();
        }
        b.build().unwrap().into()
    }

    #[test]
    fn identity_copies_input() {
        let out = run_fueled(&identity_file_machine(), &w("101"), 100).unwrap();
        assert_eq!(out, RunOutcome::Halted { output: w("101"), steps: 4 });
    }

    #[test]
    fn self_loop_runs_out_of_fuel() {
        assert_eq!(run_fueled(&never(), &w("0"), 50).unwrap(), RunOutcome::OutOfFuel { steps: 50 });
    }

    #[test]
    fn blocked_start_gives_no_result() {
        let mut b = TmBuilder::new("blocked", Alphabet::binary());
        b.start("q");
        let m: MachineTM = b.build().unwrap().into();
        assert_eq!(run_fueled(&m, &w(""), 50).unwrap(), RunOutcome::NoResult { steps: 0 });
    }

    #[test]
    fn input_outside_alphabet_is_an_error() {
        assert!(run_fueled(&never(), &w("2"), 5).is_err());
    }

    #[test]
    fn load_time_checks() {
        let mut b = TmBuilder::new("bad", Alphabet::binary());
        b.start("q");
        b.rule("q", "0__", "q", "1__", "SSS").unwrap();
        assert!(b.build().is_err());

        let mut b = TmBuilder::new("bad", Alphabet::binary());
        b.start("q");
        b.rule("q", "__1", "q", "___", "SSS").unwrap();
        assert!(b.build().is_err());

        let mut b = TmBuilder::new("dup", Alphabet::binary());
        b.start("q");
        b.rule("q", "___", "q", "___", "SSS").unwrap();
        assert!(matches!(b.rule("q", "___", "q", "___", "RSS"), Err(Error::Determinism(_))));
    }

    #[test]
    fn fuel_monotonicity_on_identity() {
        let m = identity_file_machine();
        let h = run_fueled(&m, &w("0110"), 5).unwrap();
        for f in 5..20 {
            assert_eq!(run_fueled(&m, &w("0110"), f).unwrap(), h);
        }
        assert_eq!(run_fueled(&m, &w("0110"), 4).unwrap(), RunOutcome::OutOfFuel { steps: 4 });
    }

    #[test]
    fn output_skips_gaps() {
        let mut b = TmBuilder::new("gap", Alphabet::binary());
        b.start("a").final_state("c");
        b.rule("a", "___", "b", "__1", "SSR").unwrap();
        b.rule("b", "___", "c", "__0", "SSR").unwrap();
        let m: MachineTM = b.build().unwrap().into();
        assert_eq!(run_fueled(&m, &w(""), 10).unwrap().output(), Some(&w("10")));
    }

    #[test]
    fn canonical_form_drops_unreachable_states() {
        let mut b = TmBuilder::new("x", Alphabet::binary());
        b.start("s").final_state("f");
        b.state("orphan");
        b.rule("s", "___", "f", "___", "SSS").unwrap();
        b.rule("orphan", "___", "s", "___", "SSS").unwrap();
        let c = b.build().unwrap().canonicalize();
        assert_eq!(c.states, vec!["q0", "q1"]);
        assert_eq!(c.rules.len(), 1);
        assert!(c.finals.contains(&1));
    }
}
