//! The diagonal pipeline `M = B ∘ D ∘ A_C` and candidate result deciders.
//!
//! For a decider `D` that claims to tell whether an inductive machine gives
//! a result on an input, `M` on input `w`:
//!
//! 1. `B` reads `w` (one step per symbol) and checks that it is the code of
//!    an inductive machine. If it is not, `M` stops without a result.
//! 2. `D` runs on `pair(w, w)`, one step per step of `M`.
//! 3. `A_C` follows the output stream of `D`: while `D` shows `0` the
//!    output of `M` is `1`, otherwise the output toggles between `1` and
//!    `0` on every step. When `D` halts in a final state showing `0`, `M`
//!    halts with `1`.
//!
//! Run on its own code, `M` gives a result exactly when `D` says it does
//! not, so every decider is refuted on `pair(c(M), c(M))`.

use serde::Serialize;

use crate::codec::{decode_itm, encode_itm};
use crate::error::Result;
use crate::itm::{itm_run, observe, ItmOutcome, MachineITM};
use crate::process::{Process, Status};
use crate::words::{Alphabet, Word};

/// Per-stage output histories of one pipeline run, as `(step, word)` pairs
/// in the step numbering of `M`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiagonalTrace {
    /// Steps spent in `B`.
    pub b_steps: u64,
    /// Whether `B` accepted the input as a code.
    pub b_accepted: bool,
    pub d_history: Vec<(u64, Word)>,
    pub a_history: Vec<(u64, Word)>,
}

pub struct DiagonalProcess {
    b_left: u64,
    /// The decider and its input, until `B` finishes and `D` starts.
    pending: Option<(MachineITM, Word)>,
    d: Option<Box<dyn Process>>,
    d_epoch: u64,
    out: Word,
    done: bool,
    epoch: u64,
    steps: u64,
    trace: Option<DiagonalTrace>,
}

fn one() -> Word {
    Word::from_str_unchecked("1")
}

fn zero() -> Word {
    Word::from_str_unchecked("0")
}

impl DiagonalProcess {
    pub fn new(decider: MachineITM, input: Word, trace: bool) -> Self {
        let pending = decode_itm(&input).ok().and_then(|_| Alphabet::binary().pair(&input, &input).ok()).map(|p| (decider, p));
        let trace =
            trace.then(|| DiagonalTrace { b_steps: input.len() as u64, b_accepted: pending.is_some(), ..Default::default() });
        let mut p = DiagonalProcess {
            b_left: input.len() as u64,
            pending,
            d: None,
            d_epoch: 0,
            out: Word::empty(),
            done: false,
            epoch: 0,
            steps: 0,
            trace,
        };
        if let Some(t) = p.trace.as_mut() {
            t.a_history.push((0, Word::empty()));
        }
        // `D` starts only once `B` is done, so a decider that simulates this
        // very machine nests one level per `B` phase instead of at once.
        if p.b_left == 0 {
            p.start_decider();
        }
        p
    }

    fn start_decider(&mut self) {
        let Some((decider, probe)) = self.pending.take() else { return };
        self.d = decider.start(&probe).ok();
        if let Some(d) = self.d.as_ref() {
            self.d_epoch = d.output_epoch();
            if let Some(t) = self.trace.as_mut() {
                t.d_history.push((self.steps, d.output()));
            }
        } else if let Some(t) = self.trace.as_mut() {
            t.b_accepted = false;
        }
    }

    pub fn trace(&self) -> Option<&DiagonalTrace> {
        self.trace.as_ref()
    }

    fn set_output(&mut self, w: Word) {
        if w != self.out {
            self.out = w;
            self.epoch += 1;
            if let Some(t) = self.trace.as_mut() {
                t.a_history.push((self.steps, self.out.clone()));
            }
        }
    }
}

impl Process for DiagonalProcess {
    fn status(&self) -> Status {
        if self.done {
            Status::Final
        } else if self.b_left == 0 && self.d.is_none() && self.pending.is_none() {
            Status::Stuck
        } else {
            Status::Ready
        }
    }

    fn step(&mut self) {
        self.steps += 1;
        if self.b_left > 0 {
            self.b_left -= 1;
            if self.b_left == 0 {
                self.start_decider();
            }
            return;
        }
        let d = self.d.as_mut().expect("status checked");
        if d.status() == Status::Ready {
            d.step();
        }
        let d_out = d.output();
        let d_final = d.status() == Status::Final;
        let e = d.output_epoch();
        if e != self.d_epoch {
            self.d_epoch = e;
            if let Some(t) = self.trace.as_mut() {
                if t.d_history.last().map(|(_, w)| w) != Some(&d_out) {
                    t.d_history.push((self.steps, d_out.clone()));
                }
            }
        }
        if d_out == zero() {
            self.set_output(one());
            self.done = d_final;
        } else {
            let next = if self.out == one() { zero() } else { one() };
            self.set_output(next);
        }
    }

    fn output(&self) -> Word {
        self.out.clone()
    }

    fn output_epoch(&self) -> u64 {
        self.epoch
    }
}

/// Answers `1` on `pair(x, c(M))` when `M` halts in a final state on `x`
/// within `fuel` of its steps and `0` otherwise, including on inputs that
/// are not such pairs. Takes one step per simulated step, plus one to
/// answer.
pub struct SimDeciderProcess {
    fuel: u64,
    used: u64,
    inner: Option<Box<dyn Process>>,
    answer: Option<bool>,
}

impl SimDeciderProcess {
    pub fn new(fuel: u64, input: Word) -> Self {
        let inner = Alphabet::binary()
            .unpair(&input)
            .ok()
            .and_then(|(x, code)| decode_itm(&code).ok().and_then(|m| m.start(&x).ok()));
        SimDeciderProcess { fuel, used: 0, inner, answer: None }
    }
}

impl Process for SimDeciderProcess {
    fn status(&self) -> Status {
        if self.answer.is_some() {
            Status::Final
        } else {
            Status::Ready
        }
    }

    fn step(&mut self) {
        let Some(inner) = self.inner.as_mut() else {
            self.answer = Some(false);
            return;
        };
        match inner.status() {
            Status::Final => self.answer = Some(true),
            Status::Stuck => self.answer = Some(false),
            Status::Ready if self.used == self.fuel => self.answer = Some(false),
            Status::Ready => {
                inner.step();
                self.used += 1;
            }
        }
    }

    fn output(&self) -> Word {
        match self.answer {
            Some(true) => one(),
            Some(false) => zero(),
            None => Word::empty(),
        }
    }

    fn output_epoch(&self) -> u64 {
        self.answer.is_some() as u64
    }
}

/// Builds `M = B ∘ D ∘ A_C` around the decider coded by `decider_code`.
pub fn build_diagonal(decider_code: &Word) -> Result<MachineITM> {
    Ok(MachineITM::Diagonal { decider: Box::new(decode_itm(decider_code)?) })
}

/// Outcome of running the pipeline on its own code.
#[derive(Clone, Debug, Serialize)]
pub struct DiagonalReport {
    pub decider: String,
    pub code_length: usize,
    pub horizon: u64,
    /// What `D` says about `M` on `c(M)`: `Some(true)` for "gives a
    /// result", `None` if `D` itself gives no `0`/`1` answer at the horizon.
    pub decider_claims_result: Option<bool>,
    pub decider_outcome: ItmOutcome,
    pub machine_outcome: ItmOutcome,
    pub machine_gives_result: bool,
    /// `D` is refuted: its answer differs from the observed behaviour.
    pub contradiction: bool,
    pub trace: DiagonalTrace,
}

/// Runs `D` on `pair(c(M), c(M))` and `M` on `c(M)` for `horizon` steps each.
pub fn diagonal_experiment(decider: &MachineITM, horizon: u64) -> Result<DiagonalReport> {
    let m = MachineITM::Diagonal { decider: Box::new(decider.clone()) };
    let code = encode_itm(&m)?;
    let probe = Alphabet::binary().pair(&code, &code)?;
    let decider_outcome = itm_run(decider, &probe, horizon)?;
    let decider_claims_result = match decider_outcome.result() {
        Some(w) if *w == one() => Some(true),
        Some(w) if *w == zero() => Some(false),
        _ => None,
    };
    let mut p = DiagonalProcess::new(decider.clone(), code.clone(), true);
    let machine_outcome = observe(&mut p, horizon, None);
    let machine_gives_result = machine_outcome.gives_result();
    Ok(DiagonalReport {
        decider: decider.name(),
        code_length: code.len(),
        horizon,
        decider_claims_result,
        decider_outcome,
        machine_outcome,
        machine_gives_result,
        contradiction: decider_claims_result.is_some_and(|c| c != machine_gives_result),
        trace: p.trace().cloned().unwrap_or_default(),
    })
}

/// The three shipped candidate deciders.
pub fn candidate_deciders() -> Vec<MachineITM> {
    vec![
        crate::machines::const_one_decider().into(),
        crate::machines::const_zero_decider().into(),
        MachineITM::SimDecider { fuel: 500 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn every_candidate_is_refuted() {
        for d in candidate_deciders() {
            let r = diagonal_experiment(&d, 10_000).unwrap();
            assert!(r.contradiction, "{} survived: {:?} vs {:?}", r.decider, r.decider_outcome, r.machine_outcome);
        }
    }

    #[test]
    fn constant_one_makes_the_pipeline_alternate() {
        let r = diagonal_experiment(&crate::machines::const_one_decider().into(), 2_000).unwrap();
        assert!(matches!(r.machine_outcome, ItmOutcome::UnstableAtHorizon { .. }));
        assert_eq!(r.trace.d_history.last().unwrap().1, w("1"));
    }

    #[test]
    fn non_code_input_gives_no_result() {
        let m = MachineITM::Diagonal { decider: Box::new(crate::machines::const_zero_decider().into()) };
        let o = itm_run(&m, &w("0110"), 100).unwrap();
        assert_eq!(o, ItmOutcome::HaltedNonFinal { steps: 4 });
    }

    #[test]
    fn sim_decider_answers() {
        let writer_code = encode_itm(&crate::machines::writer_final().into()).unwrap();
        let p = Alphabet::binary().pair(&w(""), &writer_code).unwrap();
        let o = itm_run(&MachineITM::SimDecider { fuel: 50 }, &p, 1000).unwrap();
        assert_eq!(o.result(), Some(&w("1")));
        let o = itm_run(&MachineITM::SimDecider { fuel: 2 }, &p, 1000).unwrap();
        assert_eq!(o.result(), Some(&w("0")));
        let o = itm_run(&MachineITM::SimDecider { fuel: 50 }, &w("11"), 1000).unwrap();
        assert_eq!(o, ItmOutcome::HaltedFinal { output: w("0"), steps: 1 });
    }
}
