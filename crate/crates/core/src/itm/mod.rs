//! First-order inductive Turing machines.
//!
//! A machine is a control automaton driving one head over a structured
//! memory. Each rule either writes a symbol, follows a connection, or does
//! both; when the connection is missing the head stays put and the rest of
//! the rule still applies. The result of a run is the output register once
//! it stops changing, or the register at a final state.

pub mod embed;
pub mod limit;
pub mod memory;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::diagonal::{DiagonalProcess, SimDeciderProcess};
use crate::process::{Process, Status};
use crate::words::{Alphabet, Word, BLANK};

pub use memory::{BuiltinMemory, Cell, ExplicitMemory, LinkOverlay, MemorySpec, Region};
use memory::Graph;

/// One rule `q s -> [write s'] [move c] q'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ItmRule {
    pub write: Option<u8>,
    pub conn: Option<usize>,
    pub next: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItmTable {
    pub name: String,
    /// Every symbol a cell may hold, besides the blank.
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub start: usize,
    pub finals: BTreeSet<usize>,
    pub conn_types: Vec<String>,
    pub rules: BTreeMap<(usize, u8), ItmRule>,
    pub memory: MemorySpec,
}

impl ItmTable {
    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if n == 0 || self.start >= n {
            return Err(Error::InvalidMachine("missing or unknown start state".into()));
        }
        if self.finals.iter().any(|&f| f >= n) {
            return Err(Error::InvalidMachine("final state out of range".into()));
        }
        let mut seen = BTreeSet::new();
        if let Some(t) = self.conn_types.iter().find(|t| !seen.insert(t.as_str())) {
            return Err(Error::InvalidMachine(format!("connection type {t:?} declared twice")));
        }
        self.memory.check_types(&self.conn_types)?;
        let sym_ok = |s: u8| s == BLANK || self.alphabet.contains(s);
        for (&(q, s), r) in &self.rules {
            let here = &self.states[q];
            if r.next >= n {
                return Err(Error::InvalidMachine(format!("rule from {here} targets unknown state")));
            }
            if !sym_ok(s) || !r.write.map_or(true, sym_ok) {
                return Err(Error::InvalidMachine(format!("rule from {here} uses a symbol outside the alphabet")));
            }
            if r.conn.is_some_and(|c| c >= self.conn_types.len()) {
                return Err(Error::InvalidMachine(format!("rule from {here} uses an undeclared connection type")));
            }
            if r.write.is_none() && r.conn.is_none() {
                return Err(Error::InvalidMachine(format!("rule from {here} neither writes nor moves")));
            }
        }
        Ok(())
    }

    /// Breadth-first state renumbering from the start state; unreachable
    /// states are dropped and explicit cells keep their order.
    pub fn canonicalize(&self) -> ItmTable {
        let mut order = vec![self.start];
        let mut index = HashMap::from([(self.start, 0usize)]);
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            for (_, r) in self.rules.range((q, 0)..=(q, u8::MAX)) {
                if !index.contains_key(&r.next) {
                    index.insert(r.next, order.len());
                    order.push(r.next);
                    queue.push_back(r.next);
                }
            }
        }
        let rules = self
            .rules
            .iter()
            .filter_map(|(&(q, s), r)| Some(((*index.get(&q)?, s), ItmRule { next: index[&r.next], ..*r })))
            .collect();
        let memory = match &self.memory {
            MemorySpec::Explicit(e) => MemorySpec::Explicit(ExplicitMemory {
                cells: e.cells.iter().enumerate().map(|(i, (_, r))| (format!("c{i}"), *r)).collect(),
                links: e.links.clone(),
            }),
            b => b.clone(),
        };
        ItmTable {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            states: (0..order.len()).map(|i| format!("q{i}")).collect(),
            start: 0,
            finals: self.finals.iter().filter_map(|f| index.get(f).copied()).collect(),
            conn_types: self.conn_types.clone(),
            rules,
            memory,
        }
    }

    pub fn same_table(&self, other: &ItmTable) -> bool {
        ItmTable { name: String::new(), ..self.clone() } == ItmTable { name: String::new(), ..other.clone() }
    }

    /// Starts a run whose memory includes links asserted by a limit driver.
    pub fn start_with_overlay(&self, input: &Word, overlay: Option<&LinkOverlay>) -> Result<TableItmProcess> {
        self.alphabet.validate(input)?;
        let graph = Graph::bind(&self.memory, &self.conn_types, overlay);
        let mut contents = HashMap::new();
        let mut outputs = BTreeMap::new();
        for (i, &s) in input.as_bytes().iter().enumerate() {
            let cell = graph
                .input_cell(i)
                .ok_or_else(|| Error::InputTooLong(format!("{} has fewer than {} input cells", self.name, input.len())))?;
            contents.insert(cell, s);
            if graph.is_output(cell) {
                outputs.insert(cell, s);
            }
        }
        Ok(TableItmProcess {
            table: self.clone(),
            config: ItmConfig { state: self.start, head: graph.start(), contents, steps: 0 },
            graph,
            outputs,
            epoch: 0,
        })
    }
}

/// Incremental builder for inductive machine tables.
#[derive(Clone, Debug)]
pub struct ItmBuilder {
    table: ItmTable,
    has_start: bool,
}

impl ItmBuilder {
    pub fn new(name: &str, alphabet: Alphabet, memory: MemorySpec, conn_types: &[&str]) -> Self {
        ItmBuilder {
            table: ItmTable {
                name: name.to_string(),
                alphabet,
                states: Vec::new(),
                start: 0,
                finals: BTreeSet::new(),
                conn_types: conn_types.iter().map(|s| s.to_string()).collect(),
                rules: BTreeMap::new(),
                memory,
            },
            has_start: false,
        }
    }

    pub fn state(&mut self, name: &str) -> usize {
        match self.table.states.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.table.states.push(name.to_string());
                self.table.states.len() - 1
            }
        }
    }

    pub fn start(&mut self, name: &str) -> &mut Self {
        self.table.start = self.state(name);
        self.has_start = true;
        self
    }

    pub fn final_state(&mut self, name: &str) -> &mut Self {
        let q = self.state(name);
        self.table.finals.insert(q);
        self
    }

    pub fn conn(&self, ty: &str) -> Result<usize> {
        self.table
            .conn_types
            .iter()
            .position(|t| t == ty)
            .ok_or_else(|| Error::InvalidMachine(format!("undeclared connection type {ty:?}")))
    }

    /// Adds `from sym -> [write w] [move conn] to`.
    pub fn rule(&mut self, from: &str, sym: u8, write: Option<u8>, conn: Option<&str>, to: &str) -> Result<&mut Self> {
        let conn = conn.map(|c| self.conn(c)).transpose()?;
        let q = self.state(from);
        let next = self.state(to);
        self.insert(q, sym, ItmRule { write, conn, next })?;
        Ok(self)
    }

    pub(crate) fn insert(&mut self, q: usize, sym: u8, r: ItmRule) -> Result<()> {
        if self.table.rules.contains_key(&(q, sym)) {
            return Err(Error::Determinism(format!(
                "two rules for state {} reading {:?}",
                self.table.states[q], sym as char
            )));
        }
        self.table.rules.insert((q, sym), r);
        Ok(())
    }

    pub fn build(&self) -> Result<ItmTable> {
        if !self.has_start {
            return Err(Error::InvalidMachine("no start state".into()));
        }
        self.table.validate()?;
        Ok(self.table.clone())
    }
}

/// An inductive machine: a rule table or a host-level builtin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineITM {
    Table(ItmTable),
    /// `B ∘ D ∘ A_C` built around the decider.
    Diagonal { decider: Box<MachineITM> },
    /// Answers `1` on `pair(x, c(T))` when `T` halts in a final state on `x`
    /// within `fuel` steps, otherwise `0`.
    SimDecider { fuel: u64 },
}

impl MachineITM {
    pub fn name(&self) -> String {
        match self {
            MachineITM::Table(t) => t.name.clone(),
            MachineITM::Diagonal { decider } => format!("diagonal({})", decider.name()),
            MachineITM::SimDecider { fuel } => format!("sim-decider({fuel})"),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            MachineITM::Table(t) => t.alphabet.clone(),
            _ => Alphabet::binary(),
        }
    }

    pub fn start(&self, input: &Word) -> Result<Box<dyn Process>> {
        Ok(match self {
            MachineITM::Table(t) => Box::new(t.start_with_overlay(input, None)?),
            MachineITM::Diagonal { decider } => {
                Alphabet::binary().validate(input)?;
                Box::new(DiagonalProcess::new((**decider).clone(), input.clone(), false))
            }
            MachineITM::SimDecider { fuel } => {
                Alphabet::binary().validate(input)?;
                Box::new(SimDeciderProcess::new(*fuel, input.clone()))
            }
        })
    }
}

impl From<ItmTable> for MachineITM {
    fn from(t: ItmTable) -> Self {
        MachineITM::Table(t)
    }
}

/// The mutable part of a table-machine run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItmConfig {
    pub state: usize,
    pub head: Cell,
    pub contents: HashMap<Cell, u8>,
    pub steps: u64,
}

impl ItmConfig {
    pub fn read(&self, c: Cell) -> u8 {
        self.contents.get(&c).copied().unwrap_or(BLANK)
    }
}

pub struct TableItmProcess {
    table: ItmTable,
    graph: Graph,
    config: ItmConfig,
    outputs: BTreeMap<Cell, u8>,
    epoch: u64,
}

impl TableItmProcess {
    pub fn config(&self) -> &ItmConfig {
        &self.config
    }

    /// Applies the unique matching rule. Returns `false`, changing nothing,
    /// when the machine is final or no rule matches.
    pub fn itm_step(&mut self) -> bool {
        if self.status() != Status::Ready {
            return false;
        }
        self.step();
        true
    }
}

impl Process for TableItmProcess {
    fn status(&self) -> Status {
        let c = &self.config;
        if self.table.finals.contains(&c.state) {
            Status::Final
        } else if self.table.rules.contains_key(&(c.state, c.read(c.head))) {
            Status::Ready
        } else {
            Status::Stuck
        }
    }

    fn step(&mut self) {
        let c = &mut self.config;
        let r = self.table.rules[&(c.state, c.read(c.head))];
        if let Some(s) = r.write {
            if s == BLANK {
                c.contents.remove(&c.head);
            } else {
                c.contents.insert(c.head, s);
            }
            if self.graph.is_output(c.head) {
                if s == BLANK {
                    self.outputs.remove(&c.head);
                } else {
                    self.outputs.insert(c.head, s);
                }
                self.epoch += 1;
            }
        }
        if let Some(ty) = r.conn {
            if let Some(to) = self.graph.link(c.head, ty) {
                c.head = to;
            }
        }
        c.state = r.next;
        c.steps += 1;
    }

    fn output(&self) -> Word {
        Word::from_bytes(self.outputs.values().copied().collect())
    }

    fn output_epoch(&self) -> u64 {
        self.epoch
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ItmOutcome {
    HaltedFinal { output: Word, steps: u64 },
    HaltedNonFinal { steps: u64 },
    StabilizedAtHorizon { output: Word, last_change_step: u64, horizon: u64 },
    UnstableAtHorizon { horizon: u64, change_count: u64 },
}

impl ItmOutcome {
    /// The machine's result, if it gave one within the horizon.
    pub fn result(&self) -> Option<&Word> {
        match self {
            ItmOutcome::HaltedFinal { output, .. } | ItmOutcome::StabilizedAtHorizon { output, .. } => Some(output),
            _ => None,
        }
    }

    pub fn gives_result(&self) -> bool {
        self.result().is_some()
    }
}

impl fmt::Display for ItmOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ItmOutcome::HaltedFinal { output, steps } => write!(f, "halted in a final state with {output:?} after {steps} steps"),
            ItmOutcome::HaltedNonFinal { steps } => write!(f, "stopped without a result after {steps} steps"),
            ItmOutcome::StabilizedAtHorizon { output, last_change_step, horizon } => {
                write!(f, "output {output:?} unchanged since step {last_change_step} (horizon {horizon})")
            }
            ItmOutcome::UnstableAtHorizon { horizon, change_count } => {
                write!(f, "output still changing at horizon {horizon} ({change_count} changes)")
            }
        }
    }
}

/// Output changes seen while observing a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputHistory {
    /// `(step, new output)` for every change; step 0 holds the initial word.
    pub changes: Vec<(u64, Word)>,
}

/// Runs a process up to `horizon` steps and classifies its output history.
///
/// Stabilization is judged by the gaps between output changes: the output
/// counts as settled when it has been quiet for longer than the largest gap
/// seen between two consecutive changes. A register that never changes is
/// settled from step 0.
pub fn observe(p: &mut dyn Process, horizon: u64, mut history: Option<&mut OutputHistory>) -> ItmOutcome {
    let mut out = p.output();
    let mut epoch = p.output_epoch();
    let (mut changes, mut last, mut max_gap) = (0u64, 0u64, 0u64);
    if let Some(h) = history.as_deref_mut() {
        h.changes.push((0, out.clone()));
    }
    let mut steps = 0u64;
    loop {
        match p.status() {
            Status::Final => return ItmOutcome::HaltedFinal { output: out, steps },
            Status::Stuck => return ItmOutcome::HaltedNonFinal { steps },
            Status::Ready if steps >= horizon => {
                return if horizon - last > max_gap {
                    ItmOutcome::StabilizedAtHorizon { output: out, last_change_step: last, horizon }
                } else {
                    ItmOutcome::UnstableAtHorizon { horizon, change_count: changes }
                };
            }
            Status::Ready => {
                p.step();
                steps += 1;
                let e = p.output_epoch();
                if e != epoch {
                    epoch = e;
                    let now = p.output();
                    if now != out {
                        if changes > 0 {
                            max_gap = max_gap.max(steps - last);
                        }
                        changes += 1;
                        last = steps;
                        if let Some(h) = history.as_deref_mut() {
                            h.changes.push((steps, now.clone()));
                        }
                        out = now;
                    }
                }
            }
        }
    }
}

/// Runs `m` on `input` for at most `horizon` steps.
pub fn itm_run(m: &MachineITM, input: &Word, horizon: u64) -> Result<ItmOutcome> {
    let mut p = m.start(input)?;
    Ok(observe(p.as_mut(), horizon, None))
}

/// Like [`itm_run`] but also returns every output change.
pub fn itm_run_traced(m: &MachineITM, input: &Word, horizon: u64) -> Result<(ItmOutcome, OutputHistory)> {
    let mut p = m.start(input)?;
    let mut h = OutputHistory::default();
    let o = observe(p.as_mut(), horizon, Some(&mut h));
    Ok((o, h))
}

/// Universal inductive machine: decodes `p` and runs it. A word that is not
/// the code of an inductive machine never settles.
pub fn itm_universal_apply(p: &Word, input: &Word, horizon: u64) -> ItmOutcome {
    let diverge = ItmOutcome::UnstableAtHorizon { horizon, change_count: 0 };
    match crate::codec::decode_machine(p) {
        Ok(crate::codec::Machine::Itm(m)) => itm_run(&m, input, horizon).unwrap_or(diverge),
        _ => diverge,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn linear(name: &str) -> ItmBuilder {
        ItmBuilder::new(name, Alphabet::binary(), MemorySpec::Builtin(BuiltinMemory::Linear), &["L", "R", "U", "D"])
    }

    /// Moves to the output row, writes `1` on its third step, then spins.
    pub(crate) fn writer() -> ItmTable {
        let mut b = linear("writer");
        b.start("q0");
        for s in [b'0', b'1', BLANK] {
            b.rule("q0", s, None, Some("D"), "q1").unwrap();
        }
        b.rule("q1", BLANK, None, Some("D"), "q2").unwrap();
        b.rule("q2", BLANK, Some(b'1'), None, "spin").unwrap();
        b.rule("spin", b'1', Some(b'1'), None, "spin").unwrap();
        b.build().unwrap()
    }

    fn alternator() -> ItmTable {
        let mut b = linear("alternator");
        b.start("q0");
        for s in [b'0', b'1', BLANK] {
            b.rule("q0", s, None, Some("D"), "q1").unwrap();
        }
        b.rule("q1", BLANK, None, Some("D"), "flip").unwrap();
        b.rule("flip", BLANK, Some(b'1'), None, "flip").unwrap();
        b.rule("flip", b'1', Some(b'0'), None, "flip").unwrap();
        b.rule("flip", b'0', Some(b'1'), None, "flip").unwrap();
        b.build().unwrap()
    }

    #[test]
    fn rule_forms() {
        let mut b = ItmBuilder::new(
            "forms",
            Alphabet::binary(),
            MemorySpec::Explicit(ExplicitMemory {
                cells: vec![("x".into(), Region::Input), ("y".into(), Region::Output)],
                links: BTreeSet::from([(0, 1, 1)]),
            }),
            &["s", "t"],
        );
        b.start("q0");
        b.rule("q0", BLANK, Some(b'1'), None, "q1").unwrap();
        b.rule("q1", b'1', None, Some("s"), "q2").unwrap();
        b.rule("q2", b'1', Some(b'0'), Some("t"), "q3").unwrap();
        let t = b.build().unwrap();
        let mut p = t.start_with_overlay(&w(""), None).unwrap();
        let x = Cell::Node(0);

        assert!(p.itm_step());
        assert_eq!((p.config().read(x), p.config().state, p.config().head), (b'1', 1, x));
        // no `s` link from x: the state changes, the head stays
        assert!(p.itm_step());
        assert_eq!((p.config().state, p.config().head), (2, x));
        assert!(p.itm_step());
        assert_eq!((p.config().read(x), p.config().state, p.config().head), (b'0', 3, Cell::Node(1)));
        assert!(!p.itm_step());
    }

    #[test]
    fn writer_stabilizes() {
        let m: MachineITM = writer().into();
        for h in [4, 10, 1000] {
            let o = itm_run(&m, &w(""), h).unwrap();
            assert_eq!(o, ItmOutcome::StabilizedAtHorizon { output: w("1"), last_change_step: 3, horizon: h });
        }
    }

    #[test]
    fn alternator_is_unstable() {
        let m: MachineITM = alternator().into();
        assert!(matches!(itm_run(&m, &w("0"), 500).unwrap(), ItmOutcome::UnstableAtHorizon { horizon: 500, .. }));
    }

    #[test]
    fn silent_machine_is_stable_at_empty() {
        let mut b = linear("silent");
        b.start("q");
        for s in [b'0', b'1', BLANK] {
            b.rule("q", s, None, Some("R"), "q").unwrap();
        }
        let m: MachineITM = b.build().unwrap().into();
        assert_eq!(
            itm_run(&m, &w("01"), 77).unwrap(),
            ItmOutcome::StabilizedAtHorizon { output: w(""), last_change_step: 0, horizon: 77 }
        );
    }

    #[test]
    fn explicit_memory_overflow_is_reported() {
        let mut b = ItmBuilder::new(
            "tiny",
            Alphabet::binary(),
            MemorySpec::Explicit(ExplicitMemory { cells: vec![("x".into(), Region::Input)], links: BTreeSet::new() }),
            &[],
        );
        b.start("q");
        let t = b.build().unwrap();
        assert!(matches!(t.start_with_overlay(&w("01"), None), Err(Error::InputTooLong(_))));
    }

    #[test]
    fn universal_apply_matches_direct_run() {
        let m: MachineITM = writer().into();
        let code = crate::codec::encode_itm(&m).unwrap();
        assert_eq!(itm_universal_apply(&code, &w(""), 100), itm_run(&m, &w(""), 100).unwrap());
        assert!(matches!(itm_universal_apply(&w("11"), &w(""), 100), ItmOutcome::UnstableAtHorizon { .. }));
    }
}
