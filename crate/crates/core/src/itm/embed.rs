//! Compiles a three-tape Turing machine into an inductive machine over the
//! `tm3` memory.
//!
//! The three tapes are interleaved on one chain in blocks of six cells:
//! tape `t` position `i` keeps its symbol in data cell `6i + 2t` and the
//! cell `6i + 2t + 1` right after it may hold the head mark for tape `t`.
//! Simulating one Turing step takes a right scan that collects the three
//! marked symbols, then a left sweep that rewrites each tape and moves its
//! mark, then a short walk back to restart the scan.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::itm::{BuiltinMemory, ItmRule, ItmTable, MemorySpec};
use crate::tm::{Move, TmTable};
use crate::words::{Alphabet, BLANK};

const LEFT: usize = 0;
const RIGHT: usize = 1;

type RuleKey = (usize, [u8; 3]);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Init(u8),
    ScanEven { q: usize, found: [Option<u8>; 3] },
    ScanOdd { q: usize, found: [Option<u8>; 3], last: u8 },
    SweepEven { rule: RuleKey, done: u8 },
    SweepOdd { rule: RuleKey, done: u8 },
    /// At the data cell of tape `t`, about to apply the rule's write.
    Act { rule: RuleKey, done: u8, t: u8 },
    /// At the new mark position of tape `t`.
    Mark { rule: RuleKey, done: u8, t: u8 },
    Walk { dir: usize, left: u8, then: Box<Key> },
    Halt,
    Stuck,
}

impl Key {
    fn name(&self) -> String {
        match self {
            Key::Init(i) => format!("init{i}"),
            Key::ScanEven { q, found } => format!("scan.{q}.{}", fmt_found(found)),
            Key::ScanOdd { q, found, last } => format!("scan'.{q}.{}.{}", fmt_found(found), *last as char),
            Key::SweepEven { rule, done } => format!("sweep.{}.{done}", fmt_rule(rule)),
            Key::SweepOdd { rule, done } => format!("sweep'.{}.{done}", fmt_rule(rule)),
            Key::Act { rule, done, t } => format!("act.{}.{done}.{t}", fmt_rule(rule)),
            Key::Mark { rule, done, t } => format!("mark.{}.{done}.{t}", fmt_rule(rule)),
            Key::Walk { dir, left, then } => format!("walk{}{left}>{}", ["L", "R"][*dir], then.name()),
            Key::Halt => "halt".into(),
            Key::Stuck => "stuck".into(),
        }
    }
}

fn fmt_found(f: &[Option<u8>; 3]) -> String {
    f.iter().map(|s| s.map_or('-', |b| b as char)).collect()
}

fn fmt_rule(r: &RuleKey) -> String {
    format!("{}{}", r.0, String::from_utf8_lossy(&r.1))
}

/// State that performs `n` more moves in `dir` and then becomes `then`.
fn after_moves(dir: usize, n: u8, then: Key) -> Key {
    if n == 0 {
        then
    } else {
        Key::Walk { dir, left: n, then: Box::new(then) }
    }
}

/// Distance from a data cell to the mark cell after a head move, and the
/// direction of the walk.
fn mark_offset(m: Move) -> (usize, u8) {
    match m {
        Move::Stay => (RIGHT, 1),
        Move::Right => (RIGHT, 7),
        Move::Left => (LEFT, 5),
    }
}

/// The three mark symbols chosen for `alphabet`.
pub fn marks_for(alphabet: &Alphabet) -> Result<[u8; 3]> {
    let picked: Vec<u8> = b"ABCXYZ#$%&*+".iter().copied().filter(|&c| !alphabet.contains(c)).take(3).collect();
    picked.try_into().map_err(|_| Error::InvalidMachine("no free mark symbols for the embedding".into()))
}

struct Compiler<'a> {
    tm: &'a TmTable,
    marks: [u8; 3],
    tape_syms: Vec<u8>,
    all_syms: Vec<u8>,
    ids: HashMap<Key, usize>,
    keys: Vec<Key>,
    queue: VecDeque<usize>,
    rules: Vec<(usize, u8, ItmRule)>,
}

impl<'a> Compiler<'a> {
    fn id(&mut self, k: Key) -> usize {
        if let Some(&i) = self.ids.get(&k) {
            return i;
        }
        let i = self.keys.len();
        self.ids.insert(k.clone(), i);
        self.keys.push(k);
        self.queue.push_back(i);
        i
    }

    fn add(&mut self, from: usize, sym: u8, write: Option<u8>, conn: Option<usize>, to: Key) {
        let next = self.id(to);
        self.rules.push((from, sym, ItmRule { write, conn, next }));
    }

    fn mark_tape(&self, s: u8) -> Option<u8> {
        self.marks.iter().position(|&m| m == s).map(|t| t as u8)
    }

    /// State entered on arriving back at a data cell after tape `t` is done.
    fn after_tape(&self, rule: RuleKey, done: u8) -> Key {
        if done == 0b111 {
            let next = self.tm.rules[&rule].next;
            if self.tm.finals.contains(&next) {
                Key::Halt
            } else {
                after_moves(LEFT, 6, Key::ScanEven { q: next, found: [None; 3] })
            }
        } else {
            Key::SweepEven { rule, done }
        }
    }

    fn expand(&mut self, id: usize) {
        let key = self.keys[id].clone();
        match key {
            Key::Halt | Key::Stuck => {}
            Key::Init(phase) => {
                let next = |p: u8| Key::Init(p);
                match phase {
                    0 | 2 | 4 => {
                        for s in self.all_syms.clone() {
                            self.add(id, s, None, Some(RIGHT), next(phase + 1));
                        }
                    }
                    1 | 3 => {
                        let m = self.marks[(phase / 2) as usize];
                        self.add(id, BLANK, Some(m), Some(RIGHT), next(phase + 1));
                    }
                    _ => {
                        let scan = Key::ScanEven { q: self.tm.start, found: [None; 3] };
                        self.add(id, BLANK, Some(self.marks[2]), Some(LEFT), after_moves(LEFT, 4, scan));
                    }
                }
            }
            Key::Walk { dir, left, then } => {
                let to = after_moves(dir, left - 1, *then);
                for s in self.all_syms.clone() {
                    self.add(id, s, None, Some(dir), to.clone());
                }
            }
            Key::ScanEven { q, found } => {
                for s in self.tape_syms.clone() {
                    self.add(id, s, None, Some(RIGHT), Key::ScanOdd { q, found, last: s });
                }
            }
            Key::ScanOdd { q, found, last } => {
                self.add(id, BLANK, None, Some(RIGHT), Key::ScanEven { q, found });
                for t in 0..3u8 {
                    if found[t as usize].is_some() {
                        continue;
                    }
                    let mut f = found;
                    f[t as usize] = Some(last);
                    let m = self.marks[t as usize];
                    match f {
                        [Some(a), Some(b), Some(c)] => {
                            let rule = (q, [a, b, c]);
                            if self.tm.rules.contains_key(&rule) {
                                self.add(id, m, Some(BLANK), Some(LEFT), Key::Act { rule, done: 0, t });
                            } else {
                                self.add(id, m, Some(m), None, Key::Stuck);
                            }
                        }
                        _ => self.add(id, m, None, Some(RIGHT), Key::ScanEven { q, found: f }),
                    }
                }
            }
            Key::SweepOdd { rule, done } => {
                for s in self.all_syms.clone() {
                    match self.mark_tape(s) {
                        Some(t) if done & (1 << t) == 0 => self.add(id, s, Some(BLANK), Some(LEFT), Key::Act { rule, done, t }),
                        _ => self.add(id, s, None, Some(LEFT), Key::SweepEven { rule, done }),
                    }
                }
            }
            Key::SweepEven { rule, done } => {
                for s in self.tape_syms.clone() {
                    self.add(id, s, None, Some(LEFT), Key::SweepOdd { rule, done });
                }
            }
            Key::Act { rule, done, t } => {
                let act = self.tm.rules[&rule].clone();
                let (dir, dist) = mark_offset(act.moves[t as usize]);
                let s = rule.1[t as usize];
                let to = after_moves(dir, dist - 1, Key::Mark { rule, done, t });
                self.add(id, s, Some(act.write[t as usize]), Some(dir), to);
            }
            Key::Mark { rule, done, t } => {
                let act = self.tm.rules[&rule].clone();
                let (dir, dist) = mark_offset(act.moves[t as usize]);
                let back = 1 - dir;
                let arrive = self.after_tape(rule, done | (1 << t));
                let to = after_moves(back, dist - 1, arrive);
                self.add(id, BLANK, Some(self.marks[t as usize]), Some(back), to);
            }
        }
    }
}

/// Builds the inductive machine that simulates `tm` step by step.
///
/// The result halts in a final state exactly when `tm` does, with the same
/// output, and gets stuck exactly when `tm` has no applicable rule.
pub fn embed_tm(tm: &TmTable) -> Result<ItmTable> {
    let marks = marks_for(&tm.alphabet)?;
    let mut tape_syms = tm.alphabet.symbols().to_vec();
    tape_syms.push(BLANK);
    let mut all_syms = tape_syms.clone();
    all_syms.extend_from_slice(&marks);
    let mut cell_syms = tm.alphabet.symbols().to_vec();
    cell_syms.extend_from_slice(&marks);

    let mut c = Compiler {
        tm,
        marks,
        tape_syms,
        all_syms,
        ids: HashMap::new(),
        keys: Vec::new(),
        queue: VecDeque::new(),
        rules: Vec::new(),
    };
    let start = if tm.finals.contains(&tm.start) { Key::Halt } else { Key::Init(0) };
    c.id(start);
    while let Some(id) = c.queue.pop_front() {
        c.expand(id);
    }

    let finals = c.keys.iter().enumerate().filter(|(_, k)| **k == Key::Halt).map(|(i, _)| i).collect();
    let table = ItmTable {
        name: format!("embed({})", tm.name),
        alphabet: Alphabet::new(&cell_syms)?,
        states: c.keys.iter().map(Key::name).collect(),
        start: 0,
        finals,
        conn_types: vec!["L".into(), "R".into()],
        rules: c.rules.iter().map(|&(q, s, r)| ((q, s), r)).collect(),
        memory: MemorySpec::Builtin(BuiltinMemory::Tm3),
    };
    table.validate()?;
    Ok(table)
}
