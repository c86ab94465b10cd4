//! Machine transformers relating totality, infinity of range and inductive
//! results.
//!
//! Each transformer is a host-level machine that simulates its argument one
//! step per own step, so fuel limits compose exactly. Inputs are read as
//! positions in the shortlex sequence: the word `x_n` is the `n`-th word,
//! starting with `x_1 = ε`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::codec::{decode_itm, decode_tm};
use crate::error::Result;
use crate::itm::{itm_run, ItmOutcome, MachineITM};
use crate::process::{Process, Status};
use crate::tm::{run_fueled, MachineTM, RunOutcome};
use crate::words::{Alphabet, Word};

/// The position `n` of `x` in `x_1, x_2, ...`.
fn position(x: &Word) -> Result<u64> {
    Alphabet::binary().shortlex_index(x).map(|i| i + 1)
}

/// `M_T`: on `x_n` runs `T` on `x_1, ..., x_n` in turn and outputs `T(x_n)`.
pub struct TotalizerProcess {
    inner: MachineTM,
    n: u64,
    current: u64,
    run: Box<dyn Process>,
}

impl TotalizerProcess {
    pub fn new(inner: MachineTM, input: &Word) -> Result<Self> {
        let n = position(input)?;
        let run = inner.start(&Alphabet::binary().word_at(0))?;
        Ok(TotalizerProcess { inner, n, current: 1, run })
    }
}

impl Process for TotalizerProcess {
    fn status(&self) -> Status {
        match self.run.status() {
            Status::Final if self.current == self.n => Status::Final,
            Status::Final | Status::Ready => Status::Ready,
            Status::Stuck => Status::Stuck,
        }
    }

    fn step(&mut self) {
        if self.run.status() == Status::Final {
            let x = Alphabet::binary().word_at(self.current);
            self.current += 1;
            // x is binary and `inner` accepted binary input before
            self.run = self.inner.start(&x).expect("binary input");
        } else {
            self.run.step();
        }
    }

    fn output(&self) -> Word {
        self.run.output()
    }

    fn output_epoch(&self) -> u64 {
        self.current
    }
}

/// `N_T`: on `x_n` dovetails `T` over all inputs and outputs the `n`-th
/// distinct value it discovers.
///
/// Each step either starts `T` on the next input or advances one pending
/// run by a step; rounds alternate one activation with one pass over the
/// pending runs.
pub struct RangeEnumeratorProcess {
    inner: MachineTM,
    n: u64,
    next_input: u64,
    pending: VecDeque<Box<dyn Process>>,
    /// Runs still to be advanced in the current round.
    round_left: usize,
    found: Vec<Word>,
    seen: BTreeSet<Word>,
}

impl RangeEnumeratorProcess {
    pub fn new(inner: MachineTM, input: &Word) -> Result<Self> {
        let n = position(input)?;
        inner.alphabet().validate(&Word::empty())?;
        Ok(RangeEnumeratorProcess {
            inner,
            n,
            next_input: 0,
            pending: VecDeque::new(),
            round_left: 0,
            found: Vec::new(),
            seen: BTreeSet::new(),
        })
    }

    /// Records the result of a stopped run; hands back a run that can still step.
    fn settle(&mut self, run: Box<dyn Process>) -> Option<Box<dyn Process>> {
        match run.status() {
            Status::Ready => Some(run),
            Status::Stuck => None,
            Status::Final => {
                let out = run.output();
                if self.seen.insert(out.clone()) {
                    self.found.push(out);
                }
                None
            }
        }
    }
}

impl Process for RangeEnumeratorProcess {
    fn status(&self) -> Status {
        if self.found.len() as u64 >= self.n {
            Status::Final
        } else {
            Status::Ready
        }
    }

    fn step(&mut self) {
        if self.round_left == 0 {
            let x = Alphabet::binary().word_at(self.next_input);
            self.next_input += 1;
            if let Ok(run) = self.inner.start(&x) {
                if let Some(run) = self.settle(run) {
                    self.pending.push_back(run);
                }
            }
            self.round_left = self.pending.len();
        } else {
            self.round_left -= 1;
            let mut run = self.pending.pop_front().expect("round bounded by pending runs");
            run.step();
            if let Some(run) = self.settle(run) {
                self.pending.push_back(run);
            }
        }
    }

    fn output(&self) -> Word {
        self.found.get(self.n as usize - 1).cloned().unwrap_or_default()
    }

    fn output_epoch(&self) -> u64 {
        self.found.len() as u64
    }
}

/// `T_{x,M}`: on `x_n` watches the output sequence `M_1(x), M_2(x), ...` of
/// `M` on `x` (consecutive duplicates collapsed, the initial register
/// content counted as `M_1`) and halts with `M_n(x)` as soon as `M_{n+1}(x)`
/// appears.
///
/// If `M` stops in a non-final state it gives no result, so the sequence is
/// treated as never settling and the last output is returned. If `M` halts
/// in a final state before `n + 1` outputs exist, the machine runs forever.
pub struct ReductionProcess {
    run: Box<dyn Process>,
    n: u64,
    outputs: Vec<Word>,
    epoch: u64,
    answer: Option<Word>,
}

impl ReductionProcess {
    pub fn new(itm: MachineITM, x: Word, input: &Word) -> Result<Self> {
        let n = position(input)?;
        let run = itm.start(&x)?;
        let first = run.output();
        let epoch = run.output_epoch();
        let mut p = ReductionProcess { run, n, outputs: vec![first], epoch, answer: None };
        p.check();
        Ok(p)
    }

    fn check(&mut self) {
        if self.answer.is_some() {
            return;
        }
        if self.outputs.len() as u64 > self.n {
            self.answer = Some(self.outputs[self.n as usize - 1].clone());
        } else if self.run.status() == Status::Stuck {
            self.answer = self.outputs.last().cloned();
        }
    }
}

impl Process for ReductionProcess {
    fn status(&self) -> Status {
        if self.answer.is_some() {
            Status::Final
        } else {
            Status::Ready
        }
    }

    fn step(&mut self) {
        if self.run.status() != Status::Ready {
            // M halted with a result: nothing more will ever appear
            return;
        }
        self.run.step();
        let e = self.run.output_epoch();
        if e != self.epoch {
            self.epoch = e;
            let now = self.run.output();
            if self.outputs.last() != Some(&now) {
                self.outputs.push(now);
            }
        }
        self.check();
    }

    fn output(&self) -> Word {
        self.answer.clone().unwrap_or_default()
    }

    fn output_epoch(&self) -> u64 {
        self.answer.is_some() as u64
    }
}

/// `N_T` for the machine coded by `code`.
pub fn build_range_enumerator(code: &Word) -> Result<MachineTM> {
    Ok(MachineTM::RangeEnumerator(Box::new(decode_tm(code)?)))
}

/// `M_T` for the machine coded by `code`.
pub fn build_totalizer(code: &Word) -> Result<MachineTM> {
    Ok(MachineTM::Totalizer(Box::new(decode_tm(code)?)))
}

/// `T_{x,M}` for the inductive machine coded by `itm_code`.
pub fn build_reduction_tm(itm_code: &Word, x: &Word) -> Result<MachineTM> {
    let itm = decode_itm(itm_code)?;
    Alphabet::binary().validate(x)?;
    Ok(MachineTM::Reduction { itm: Box::new(itm), x: x.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRun {
    pub input: Word,
    pub outcome: RunOutcome,
}

/// Fueled totality of `T_{x,M}` on `x_1 .. x_probes` next to the observed
/// run of `M` on `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub machine: String,
    pub x: Word,
    pub fuel: u64,
    pub probes: Vec<ProbeRun>,
    pub total_on_probes: bool,
    pub itm_outcome: ItmOutcome,
    pub itm_defined: bool,
    /// `total_on_probes` is the negation of `itm_defined`.
    pub agrees: bool,
}

pub fn reduction_check(itm: &MachineITM, x: &Word, probes: u64, fuel: u64, horizon: u64) -> Result<ReductionReport> {
    let t = MachineTM::Reduction { itm: Box::new(itm.clone()), x: x.clone() };
    let a = Alphabet::binary();
    let probes = (0..probes)
        .map(|i| {
            let input = a.word_at(i);
            let outcome = run_fueled(&t, &input, fuel)?;
            Ok(ProbeRun { input, outcome })
        })
        .collect::<Result<Vec<_>>>()?;
    let total_on_probes = probes.iter().all(|p| p.outcome.is_halted());
    let itm_outcome = itm_run(itm, x, horizon)?;
    let itm_defined = itm_outcome.gives_result();
    Ok(ReductionReport {
        machine: itm.name(),
        x: x.clone(),
        fuel,
        probes,
        total_on_probes,
        itm_outcome,
        itm_defined,
        agrees: total_on_probes != itm_defined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{encode_itm, encode_tm};
    use crate::machines::{alternator, const_zero, halts_on_empty_only, identity, never, silent, writer};
    use crate::words::w;

    fn x(n: u64) -> Word {
        Alphabet::binary().word_at(n - 1)
    }

    #[test]
    fn totalizer_of_identity_outputs_the_last_value() {
        let m = build_totalizer(&encode_tm(&identity().into()).unwrap()).unwrap();
        for n in 1..=8 {
            let o = run_fueled(&m, &x(n), 10_000).unwrap();
            assert_eq!(o.output(), Some(&x(n)), "n = {n}");
        }
    }

    #[test]
    fn totalizer_inherits_partiality() {
        let m = build_totalizer(&encode_tm(&halts_on_empty_only().into()).unwrap()).unwrap();
        assert!(run_fueled(&m, &x(1), 10_000).unwrap().is_halted());
        assert_eq!(run_fueled(&m, &x(2), 10_000).unwrap(), RunOutcome::OutOfFuel { steps: 10_000 });
    }

    #[test]
    fn range_enumerator() {
        let id = build_range_enumerator(&encode_tm(&identity().into()).unwrap()).unwrap();
        let mut values = BTreeSet::new();
        for n in 1..=6 {
            let o = run_fueled(&id, &x(n), 10_000).unwrap();
            assert!(values.insert(o.output().unwrap().clone()));
        }
        let c = build_range_enumerator(&encode_tm(&const_zero().into()).unwrap()).unwrap();
        assert_eq!(run_fueled(&c, &x(1), 1000).unwrap().output(), Some(&w("0")));
        assert!(!run_fueled(&c, &x(2), 5000).unwrap().stopped());
        let nv = build_range_enumerator(&encode_tm(&never().into()).unwrap()).unwrap();
        assert!(!run_fueled(&nv, &x(1), 5000).unwrap().stopped());
    }

    #[test]
    fn reduction_tracks_output_changes() {
        let alt = build_reduction_tm(&encode_itm(&alternator().into()).unwrap(), &w("")).unwrap();
        for n in 1..=8 {
            assert!(run_fueled(&alt, &x(n), 10_000).unwrap().is_halted());
        }
        // writer: ε then 1, so the sequence has exactly two entries
        let wr = build_reduction_tm(&encode_itm(&writer().into()).unwrap(), &w("")).unwrap();
        assert_eq!(run_fueled(&wr, &x(1), 10_000).unwrap().output(), Some(&w("")));
        assert!(!run_fueled(&wr, &x(2), 10_000).unwrap().stopped());
        let si = build_reduction_tm(&encode_itm(&silent().into()).unwrap(), &w("")).unwrap();
        assert!(!run_fueled(&si, &x(1), 10_000).unwrap().stopped());
    }
}
