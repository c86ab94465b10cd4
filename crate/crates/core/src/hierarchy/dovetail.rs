//! Cycle-by-cycle enumeration of machines that fail to halt on some input.
//!
//! The list `L` holds pool indices. Cycle `n` runs every machine in `L` on
//! each input `x_1, ..., x_n` it has not yet halted on, with `n` steps of
//! fuel. Afterwards the next machine is activated by appending its code,
//! and every machine that halted on all the inputs it was run on this cycle
//! is moved to the end of `L`, keeping relative order. Machines that keep
//! diverging on some input stop moving and collect at the front.
//!
//! In cycle 2, when exactly one of the two active machines halts, the
//! fourth machine is inserted instead of the third; the third then follows
//! through the regular least-missing activation.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::codec::{decode_tm, encode_tm};
use crate::error::{Error, Result};
use crate::tm::{run_fueled, MachineTM};
use crate::words::{Alphabet, Word};

/// A `(machine, input)` pair that has halted, with the halting step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HaltedPair {
    /// Pool index of the machine.
    pub machine: usize,
    /// `n` for the input `x_n`.
    pub input: u64,
    pub steps: u64,
}

/// A snapshot of the enumeration after some number of cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationList {
    pub cycle: u64,
    /// Codes in list order.
    pub list: Vec<Word>,
    pub halted_pairs: Vec<HaltedPair>,
    /// Codes that did not move in the latest cycle, in list order.
    pub stable_prefix_estimate: Vec<Word>,
}

/// The running enumeration over a finite pool.
#[derive(Clone, Debug)]
pub struct Dovetailer {
    pool: Vec<MachineTM>,
    codes: Vec<Word>,
    list: Vec<usize>,
    cycle: u64,
    halted: BTreeSet<HaltedPair>,
    moved_last: BTreeSet<usize>,
}

impl Dovetailer {
    pub fn new(pool: Vec<MachineTM>) -> Result<Self> {
        if pool.is_empty() {
            return Err(Error::Usage("the enumeration pool is empty".into()));
        }
        let codes = pool.iter().map(encode_tm).collect::<Result<Vec<_>>>()?;
        Ok(Dovetailer { pool, codes, list: vec![0], cycle: 0, halted: BTreeSet::new(), moved_last: BTreeSet::new() })
    }

    pub fn from_codes(codes: &[Word]) -> Result<Self> {
        Dovetailer::new(codes.iter().map(decode_tm).collect::<Result<Vec<_>>>()?)
    }

    pub fn cycle(&self) -> u64 {
        self.cycle
    }

    /// Pool indices in list order.
    pub fn list(&self) -> &[usize] {
        &self.list
    }

    pub fn codes(&self) -> &[Word] {
        &self.codes
    }

    /// Pool indices that did not move in the latest cycle, in list order.
    pub fn stable_prefix(&self) -> Vec<usize> {
        self.list.iter().copied().filter(|k| !self.moved_last.contains(k)).collect()
    }

    fn has_halted(&self, machine: usize, input: u64) -> bool {
        self.halted.range(HaltedPair { machine, input, steps: 0 }..).next().is_some_and(|h| h.machine == machine && h.input == input)
    }

    /// Runs one cycle and returns the machines moved to the end.
    pub fn step(&mut self) -> Vec<usize> {
        self.cycle += 1;
        let n = self.cycle;
        let alphabet = Alphabet::binary();
        let jobs: Vec<(usize, u64)> = self
            .list
            .iter()
            .flat_map(|&k| (1..=n).map(move |i| (k, i)))
            .filter(|&(k, i)| !self.has_halted(k, i))
            .collect();
        let results: Vec<Option<u64>> = jobs
            .par_iter()
            .map(|&(k, i)| match run_fueled(&self.pool[k], &alphabet.word_at(i - 1), n) {
                Ok(o) if o.is_halted() => Some(o.steps()),
                _ => None,
            })
            .collect();
        let mut all_halted: Vec<bool> = vec![true; self.pool.len()];
        for (&(k, i), r) in jobs.iter().zip(&results) {
            match r {
                Some(steps) => {
                    self.halted.insert(HaltedPair { machine: k, input: i, steps: *steps });
                }
                None => all_halted[k] = false,
            }
        }
        let moved: Vec<usize> = self.list.iter().copied().filter(|&k| all_halted[k]).collect();

        let missing = |k: &usize| !self.list.contains(k);
        let least_missing = (0..self.pool.len()).find(missing);
        let insert = if n == 2 && moved.len() == 1 && self.pool.len() > 3 && missing(&3) { Some(3) } else { least_missing };
        if let Some(k) = insert {
            self.list.push(k);
        }
        let mut reordered: Vec<usize> = self.list.iter().copied().filter(|k| !moved.contains(k)).collect();
        reordered.extend(&moved);
        self.list = reordered;
        self.moved_last = moved.iter().copied().collect();
        moved
    }

    pub fn snapshot(&self) -> EnumerationList {
        EnumerationList {
            cycle: self.cycle,
            list: self.list.iter().map(|&k| self.codes[k].clone()).collect(),
            halted_pairs: self.halted.iter().copied().collect(),
            stable_prefix_estimate: self.stable_prefix().into_iter().map(|k| self.codes[k].clone()).collect(),
        }
    }
}

/// Runs `cycles` cycles of the enumeration over the machines coded by `pool`.
pub fn dovetail_nontotal(pool: &[Word], cycles: u64) -> Result<EnumerationList> {
    let mut d = Dovetailer::from_codes(pool)?;
    for _ in 0..cycles {
        d.step();
    }
    Ok(d.snapshot())
}
