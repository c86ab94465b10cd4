//! Inductive solvers: halting, emptiness, totality and the limit-memory
//! halting solver.

use std::collections::BTreeSet;

use crate::codec::decode_tm;
use crate::error::{Error, Result};
use crate::hierarchy::dovetail::Dovetailer;
use crate::hierarchy::InductiveVerdict;
use crate::itm::limit::{build_limit_memory, LimitDriver, LinkEvent, PoolHaltingDriver};
use crate::itm::{observe, BuiltinMemory, Cell, ItmBuilder, ItmOutcome, ItmTable, MemorySpec};
use crate::process::{Process, Status};
use crate::tm::{run_fueled, MachineTM};
use crate::words::{Alphabet, Word, BLANK};

/// Shows `0` while the watched machine runs and switches to `1`, halting,
/// once it stops. Stopping without a result also counts as halting.
pub struct HaltingWatcher {
    run: Box<dyn Process>,
    stopped: bool,
}

impl HaltingWatcher {
    pub fn new(m: &MachineTM, x: &Word) -> Result<Self> {
        let run = m.start(x)?;
        let stopped = run.status() != Status::Ready;
        Ok(HaltingWatcher { run, stopped })
    }
}

impl Process for HaltingWatcher {
    fn status(&self) -> Status {
        if self.stopped {
            Status::Final
        } else {
            Status::Ready
        }
    }

    fn step(&mut self) {
        self.run.step();
        self.stopped = self.run.status() != Status::Ready;
    }

    fn output(&self) -> Word {
        Word::from_str_unchecked(if self.stopped { "1" } else { "0" })
    }

    fn output_epoch(&self) -> u64 {
        self.stopped as u64
    }
}

fn verdict_from(outcome: &ItmOutcome, budget: u64) -> InductiveVerdict {
    match outcome {
        ItmOutcome::HaltedFinal { output, steps } => {
            InductiveVerdict { value: Some(output.clone()), stabilized_since: Some(*steps), budget, halted: true }
        }
        ItmOutcome::StabilizedAtHorizon { output, last_change_step, .. } => {
            InductiveVerdict { value: Some(output.clone()), stabilized_since: Some(*last_change_step), budget, halted: false }
        }
        _ => InductiveVerdict { value: None, stabilized_since: None, budget, halted: false },
    }
}

/// The order-one halting decider for the Turing machine coded by `code` on
/// `x`. `stabilized_since` counts steps of the decider.
pub fn halting_itm(code: &Word, x: &Word, horizon: u64) -> Result<InductiveVerdict> {
    let m = decode_tm(code)?;
    let mut p = HaltingWatcher::new(&m, x)?;
    Ok(verdict_from(&observe(&mut p, horizon, None), horizon))
}

/// The emptiness solver. Cycle `n` runs the machine on `x_1, ..., x_n` with
/// `n` steps each; the first halt makes it answer `0` and stop, each
/// completed cycle without one leaves `1` in the output.
pub fn emptiness_solver(code: &Word, cycles: u64) -> Result<InductiveVerdict> {
    let m = decode_tm(code)?;
    let a = Alphabet::binary();
    for n in 1..=cycles {
        for i in 0..n {
            if run_fueled(&m, &a.word_at(i), n)?.is_halted() {
                return Ok(InductiveVerdict { value: Some(Word::from_str_unchecked("0")), stabilized_since: Some(n), budget: n, halted: true });
            }
        }
    }
    let value = (cycles > 0).then(|| Word::from_str_unchecked("1"));
    Ok(InductiveVerdict { value, stabilized_since: (cycles > 0).then_some(1), budget: cycles, halted: false })
}

/// Publishes the stable prefix of the enumeration as hypercell links:
/// `a_j -p-> k_i` and `k_i -b-> a_j` when machine `i` sits at place `j`.
pub struct DovetailDriver {
    dovetail: Dovetailer,
    asserted: BTreeSet<(u64, u64)>,
}

impl DovetailDriver {
    pub fn new(dovetail: Dovetailer) -> Self {
        DovetailDriver { dovetail, asserted: BTreeSet::new() }
    }
}

impl LimitDriver for DovetailDriver {
    fn cycle(&mut self) -> Vec<LinkEvent> {
        self.dovetail.step();
        let mut events = Vec::new();
        for &(j, i) in &self.asserted {
            events.push(LinkEvent::Retract { from: Cell::Hyper(j), ty: "p".into() });
            events.push(LinkEvent::Retract { from: Cell::Machine(i), ty: "b".into() });
        }
        self.asserted.clear();
        for (j, i) in self.dovetail.stable_prefix().into_iter().enumerate() {
            let (j, i) = (j as u64 + 1, i as u64);
            events.push(LinkEvent::Assert { from: Cell::Hyper(j), ty: "p".into(), to: Cell::Machine(i) });
            events.push(LinkEvent::Assert { from: Cell::Machine(i), ty: "b".into(), to: Cell::Hyper(j) });
            self.asserted.insert((j, i));
        }
        events
    }
}

/// The second-order scanner `H` over `limitlist` memory.
///
/// Input `0^m 1` marks machine `m` among the cells `k_i`. `H` writes `1`,
/// then walks the hypercells `a_1, a_2, ...`, marking each with `x` and
/// following its `p` link to the machine cell it names. Finding the marked
/// machine makes it write `0` and halt.
pub fn totality_scanner() -> ItmTable {
    let mut b = ItmBuilder::new(
        "H_totality",
        Alphabet::new(b"01x").expect("fixed alphabet"),
        MemorySpec::Builtin(BuiltinMemory::LimitList),
        &["t", "p", "b", "n", "o"],
    );
    b.start("q0").final_state("q6");
    let rules: [(&str, u8, Option<u8>, Option<&str>, &str); 9] = [
        ("q0", BLANK, Some(b'1'), Some("t"), "q1"),
        ("q1", BLANK, Some(b'x'), None, "q2"),
        ("q2", b'x', None, Some("p"), "q3"),
        ("q3", b'x', None, Some("t"), "q1"),
        ("q3", b'0', None, Some("b"), "q4"),
        ("q3", BLANK, None, Some("b"), "q4"),
        ("q4", b'x', None, Some("t"), "q1"),
        ("q3", b'1', None, Some("o"), "q5"),
        ("q5", b'1', Some(b'0'), None, "q6"),
    ];
    for (from, sym, write, conn, to) in rules {
        b.rule(from, sym, write, conn, to).expect("fixed table");
    }
    b.build().expect("fixed table")
}

/// The totality verdict for pool machine `machine_index` after `cycles`
/// cycles of enumeration: `1` while the machine looks total, `0` once the
/// scanner finds it in the stable part of the list. `stabilized_since` is
/// the first cycle budget from which the answer no longer changed.
pub fn totality_verdict(pool: &[Word], machine_index: usize, cycles: u64) -> Result<InductiveVerdict> {
    if machine_index >= pool.len() {
        return Err(Error::IndexOutOfRange { index: machine_index, len: pool.len() });
    }
    if cycles == 0 {
        return Ok(InductiveVerdict { value: None, stabilized_since: None, budget: 0, halted: false });
    }
    let memory = build_limit_memory(
        Box::new(DovetailDriver::new(Dovetailer::from_codes(pool)?)),
        MemorySpec::Builtin(BuiltinMemory::LimitList),
    );
    let h = totality_scanner();
    let mut input = vec![b'0'; machine_index];
    input.push(b'1');
    let input = Word::from_bytes(input);
    let horizon = 8 * (pool.len() as u64 + 2);
    let mut values = Vec::new();
    let mut last = None;
    for budget in 1..=cycles {
        let overlay = memory.snapshot(budget);
        let mut p = h.start_with_overlay(&input, Some(&overlay))?;
        let o = observe(&mut p, horizon, None);
        last = Some(o.clone());
        values.push(o.result().cloned());
    }
    let final_value = values.last().cloned().flatten();
    let since = values.iter().rposition(|v| *v != final_value).map_or(1, |i| i as u64 + 2);
    Ok(InductiveVerdict {
        value: final_value.clone(),
        stabilized_since: final_value.is_some().then_some(since),
        budget: cycles,
        halted: matches!(last, Some(ItmOutcome::HaltedFinal { .. })),
    })
}

/// The limit-memory halting solver over `totality` memory.
///
/// Input `1^n`. The head walks the input chain to `L_n`, jumps to the
/// hypercell `a_n`, marks it and tries its `p` connection. If the link to
/// `c_1` exists the machine writes `1` into the output cell, otherwise `0`.
pub fn limit_halting_solver() -> ItmTable {
    let mut b = ItmBuilder::new(
        "limit_halting",
        Alphabet::binary(),
        MemorySpec::Builtin(BuiltinMemory::Totality),
        &["t", "p", "a", "o", "R", "L"],
    );
    b.start("q0").final_state("q5");
    let rules: [(&str, u8, Option<u8>, Option<&str>, &str); 8] = [
        ("q0", b'1', None, Some("R"), "q0"),
        ("q0", BLANK, None, Some("a"), "q1"),
        ("q1", BLANK, Some(b'0'), None, "q2"),
        ("q2", b'0', Some(b'0'), Some("p"), "q3"),
        ("q3", BLANK, None, Some("o"), "q4"),
        ("q4", BLANK, Some(b'1'), None, "q5"),
        ("q3", b'0', None, Some("o"), "q6"),
        ("q6", BLANK, Some(b'0'), None, "q5"),
    ];
    for (from, sym, write, conn, to) in rules {
        b.rule(from, sym, write, conn, to).expect("fixed table");
    }
    b.build().expect("fixed table")
}

/// Runs [`limit_halting_solver`] on `1^n` over memory whose `p` links were
/// built by `budget` cycles of [`PoolHaltingDriver`] on `pool`.
pub fn limit_halting_verdict(pool: Vec<(MachineTM, Word)>, n: usize, budget: u64) -> Result<ItmOutcome> {
    let memory = build_limit_memory(Box::new(PoolHaltingDriver::new(pool)), MemorySpec::Builtin(BuiltinMemory::Totality));
    let overlay = memory.snapshot(budget);
    let mut p = limit_halting_solver().start_with_overlay(&Word::from_bytes(vec![b'1'; n]), Some(&overlay))?;
    Ok(observe(&mut p, 2 * n as u64 + 16, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode_tm;
    use crate::machines::{halts_on_empty_only, halts_on_x3_only, identity, never, standard_pool};
    use crate::words::w;

    fn code(t: crate::tm::TmTable) -> Word {
        encode_tm(&t.into()).unwrap()
    }

    #[test]
    fn halting_watcher() {
        let v = halting_itm(&code(identity()), &w("0"), 1000).unwrap();
        assert_eq!((v.value, v.halted), (Some(w("1")), true));
        let v = halting_itm(&code(never()), &w("0"), 1000).unwrap();
        assert_eq!((v.value, v.stabilized_since), (Some(w("0")), Some(0)));
        let v = halting_itm(&code(halts_on_empty_only()), &w("1"), 1000).unwrap();
        assert_eq!(v.value, Some(w("0")));
    }

    #[test]
    fn emptiness() {
        let v = emptiness_solver(&code(never()), 32).unwrap();
        assert_eq!((v.value, v.stabilized_since, v.halted), (Some(w("1")), Some(1), false));
        let v = emptiness_solver(&code(identity()), 32).unwrap();
        assert_eq!((v.value, v.stabilized_since, v.halted), (Some(w("0")), Some(2), true));
        let v = emptiness_solver(&code(halts_on_x3_only()), 32).unwrap();
        assert_eq!(v.stabilized_since, Some(3));
    }

    #[test]
    fn totality_on_the_standard_pool() {
        let pool: Vec<Word> = standard_pool().iter().map(|m| encode_tm(&m.machine).unwrap()).collect();
        for (i, pm) in standard_pool().iter().enumerate() {
            let v = totality_verdict(&pool, i, 64).unwrap();
            let expect = if pm.total { "1" } else { "0" };
            assert_eq!(v.value, Some(w(expect)), "{}", pm.machine.name());
        }
        assert_eq!(totality_verdict(&pool, 0, 0).unwrap().stabilized_since, None);
        assert!(totality_verdict(&pool, 6, 4).is_err());
    }

    #[test]
    fn limit_memory_halting() {
        let pool: Vec<(MachineTM, Word)> =
            vec![(identity().into(), w("01")), (never().into(), w("")), (halts_on_x3_only().into(), w("1"))];
        // identity halts on 01 after 6 steps, the third machine after 2
        let at = |n, b| limit_halting_verdict(pool.clone(), n, b).unwrap().result().cloned();
        assert_eq!(at(0, 5), Some(w("0")));
        assert_eq!(at(0, 6), Some(w("1")));
        assert_eq!(at(1, 100), Some(w("0")));
        assert_eq!(at(2, 1), Some(w("0")));
        assert_eq!(at(2, 2), Some(w("1")));
    }
}
