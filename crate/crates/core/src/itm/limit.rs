//! Memories whose connections are built by another inductive process.
//!
//! A [`LimitDriver`] runs in cycles and reports, per cycle, which links it
//! asserts or retracts. The [`LimitMemory`] answers connection queries for a
//! given cycle budget by replaying the first `budget` cycles of that log.
//! The driver is run lazily and only once per cycle, so answers depend only
//! on `(cell, type, budget)` and never on the order of queries.

use std::sync::Mutex;

use crate::itm::memory::{Cell, LinkOverlay, MemorySpec};
use crate::tm::{run_fueled, MachineTM};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkEvent {
    Assert { from: Cell, ty: String, to: Cell },
    Retract { from: Cell, ty: String },
}

/// A cycle-structured process that builds connections.
pub trait LimitDriver: Send {
    /// Runs the next cycle and returns its link events.
    fn cycle(&mut self) -> Vec<LinkEvent>;
}

/// A driver that never asserts anything.
#[derive(Clone, Copy, Debug, Default)]
pub struct EmptyDriver;

impl LimitDriver for EmptyDriver {
    fn cycle(&mut self) -> Vec<LinkEvent> {
        Vec::new()
    }
}

/// Asserts a fixed event list at fixed cycles. Handy for scripted memories.
#[derive(Clone, Debug, Default)]
pub struct ScriptedDriver {
    script: Vec<(u64, LinkEvent)>,
    cycle: u64,
}

impl ScriptedDriver {
    pub fn new(script: Vec<(u64, LinkEvent)>) -> Self {
        ScriptedDriver { script, cycle: 0 }
    }
}

impl LimitDriver for ScriptedDriver {
    fn cycle(&mut self) -> Vec<LinkEvent> {
        self.cycle += 1;
        self.script.iter().filter(|(c, _)| *c == self.cycle).map(|(_, e)| e.clone()).collect()
    }
}

/// Links `a_n -p-> c1` as soon as pool machine `n` halts on its input.
/// Cycle `b` gives every machine `b` steps of fuel.
pub struct PoolHaltingDriver {
    pool: Vec<(MachineTM, Word)>,
    halted: Vec<bool>,
    cycle: u64,
}

impl PoolHaltingDriver {
    pub fn new(pool: Vec<(MachineTM, Word)>) -> Self {
        let halted = vec![false; pool.len()];
        PoolHaltingDriver { pool, halted, cycle: 0 }
    }
}

impl LimitDriver for PoolHaltingDriver {
    fn cycle(&mut self) -> Vec<LinkEvent> {
        self.cycle += 1;
        let mut events = Vec::new();
        for (n, (m, x)) in self.pool.iter().enumerate() {
            if self.halted[n] {
                continue;
            }
            if matches!(run_fueled(m, x, self.cycle), Ok(o) if o.is_halted()) {
                self.halted[n] = true;
                events.push(LinkEvent::Assert { from: Cell::Hyper(n as u64), ty: "p".into(), to: crate::itm::memory::C1 });
            }
        }
        events
    }
}

struct DriverLog {
    driver: Box<dyn LimitDriver>,
    cycles: Vec<Vec<LinkEvent>>,
}

pub struct LimitMemory {
    base: MemorySpec,
    log: Mutex<DriverLog>,
}

impl LimitMemory {
    pub fn base(&self) -> &MemorySpec {
        &self.base
    }

    /// All links asserted after replaying the first `budget` cycles.
    pub fn snapshot(&self, budget: u64) -> LinkOverlay {
        let mut log = self.log.lock().expect("driver log poisoned");
        while (log.cycles.len() as u64) < budget {
            let events = log.driver.cycle();
            log.cycles.push(events);
        }
        let mut links = LinkOverlay::new();
        for events in &log.cycles[..budget as usize] {
            for e in events {
                match e {
                    LinkEvent::Assert { from, ty, to } => {
                        links.insert((*from, ty.clone()), *to);
                    }
                    LinkEvent::Retract { from, ty } => {
                        links.remove(&(*from, ty.clone()));
                    }
                }
            }
        }
        links
    }

    /// The target of the `ty` connection from `cell` at cycle budget `budget`.
    pub fn oracle(&self, cell: Cell, ty: &str, budget: u64) -> Option<Cell> {
        self.snapshot(budget).get(&(cell, ty.to_string())).copied()
    }
}

pub fn build_limit_memory(driver: Box<dyn LimitDriver>, base: MemorySpec) -> LimitMemory {
    LimitMemory { base, log: Mutex::new(DriverLog { driver, cycles: Vec::new() }) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::itm::memory::{BuiltinMemory, C1};

    #[test]
    fn scripted_assertion_appears_at_its_cycle() {
        let d = ScriptedDriver::new(vec![(3, LinkEvent::Assert { from: Cell::Hyper(5), ty: "p".into(), to: C1 })]);
        let m = build_limit_memory(Box::new(d), MemorySpec::Builtin(BuiltinMemory::Totality));
        assert_eq!(m.oracle(Cell::Hyper(5), "p", 2), None);
        assert_eq!(m.oracle(Cell::Hyper(5), "p", 3), Some(C1));
        assert_eq!(m.oracle(Cell::Hyper(5), "p", 1), None);
        assert_eq!(m.oracle(Cell::Hyper(5), "p", 9), Some(C1));
    }

    #[test]
    fn retraction_removes_a_link() {
        let a = LinkEvent::Assert { from: Cell::Hyper(1), ty: "p".into(), to: Cell::Machine(2) };
        let r = LinkEvent::Retract { from: Cell::Hyper(1), ty: "p".into() };
        let m = build_limit_memory(Box::new(ScriptedDriver::new(vec![(1, a), (2, r)])), MemorySpec::Builtin(BuiltinMemory::LimitList));
        assert_eq!(m.oracle(Cell::Hyper(1), "p", 1), Some(Cell::Machine(2)));
        assert_eq!(m.oracle(Cell::Hyper(1), "p", 2), None);
    }

    #[test]
    fn empty_driver_adds_nothing() {
        let m = build_limit_memory(Box::new(EmptyDriver), MemorySpec::Builtin(BuiltinMemory::Totality));
        for b in 0..20 {
            assert!(m.snapshot(b).is_empty());
        }
    }
}
