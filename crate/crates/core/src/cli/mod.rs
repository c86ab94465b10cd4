//! The `itmc` command-line driver.
//!
//! Every subcommand prints a human-readable summary, or with `--json` one
//! JSON document carrying the result plus `tool_version`, `command` and
//! `elapsed_ms`. Exit status is 0 on success, 2 on usage errors and 1 on
//! runtime errors.

pub mod machine_file;

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codec::{encode_itm, encode_tm, Machine};
use crate::complexity::{
    functional_complexity_report, invariance_gap, problem_complexity_report, set_complexity_report, Budget, FunctionTable,
    MachineClassHandle,
};
use crate::error::{Error, Result};
use crate::hierarchy::{
    candidate_deciders, diagonal_experiment, dovetail_nontotal, emptiness_solver, halting_itm, order_lookup, order_table,
    reduction_check, totality_verdict,
};
use crate::itm::{itm_run_traced, MachineITM};
use crate::machines;
use crate::problems::{Predicate, PredicateSet};
use crate::tm::{run_fueled, MachineTM};
use crate::universal::{make_biased_universal, wrap_universal, UniversalInterpreter};
use crate::words::{Alphabet, Word};

pub use machine_file::{parse_machine_file, to_machine_file};

#[derive(Parser, Debug)]
#[command(name = "itmc", version, about = "Budgeted complexity and inductive machine experiments")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for candidate scanning (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    #[arg(long, default_value_t = 10)]
    max_len: usize,
    #[arg(long, default_value_t = 5000)]
    fuel: u64,
    #[arg(long, default_value_t = 10_000)]
    horizon: u64,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget::new(self.max_len, self.fuel, self.horizon)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a Turing machine on one input.
    RunTm {
        /// A machine file, or `builtin:<name>`.
        #[arg(long)]
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Run an inductive machine on one input and report its output history.
    RunItm {
        #[arg(long)]
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
    },
    /// Shortest program whose result satisfies all the given predicates.
    Complexity {
        /// `tm`, `itm`, `wrap` or `biased:<n>`.
        #[arg(long, default_value = "tm")]
        class: String,
        #[arg(long = "predicate", required = true)]
        predicates: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Shortest program computing a function on a finite probe domain.
    FuncComplexity {
        #[arg(long, default_value = "tm")]
        class: String,
        /// Probe pairs `x=v` separated by commas; either side may be empty.
        #[arg(long, conflicts_with = "machine")]
        pairs: Option<String>,
        /// Tabulate this machine on every word up to `--probe-len`.
        #[arg(long)]
        machine: Option<String>,
        #[arg(long, default_value_t = 2)]
        probe_len: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Additive constant between the standard interpreter and another one.
    Invariance {
        /// `std`, `wrap` or `biased:<n>`.
        #[arg(long, default_value = "wrap")]
        second: String,
        /// Use `equals:u` for every `u` up to this length.
        #[arg(long, default_value_t = 2)]
        words_up_to: usize,
        /// Extra predicates added to the family.
        #[arg(long = "predicate")]
        predicates: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Enumerate non-total machines of a pool by dovetailing.
    EnumerateNontotal {
        /// Machine files; the built-in six-machine pool when omitted.
        #[arg(long = "machine")]
        machines: Vec<String>,
        #[arg(long, default_value_t = 64)]
        cycles: u64,
    },
    /// Emptiness verdict for a machine.
    Emptiness {
        #[arg(long)]
        machine: String,
        #[arg(long, default_value_t = 32)]
        cycles: u64,
    },
    /// Totality verdict for one machine of a pool.
    Totality {
        #[arg(long = "machine")]
        machines: Vec<String>,
        /// Position of the machine in the pool, from 0.
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 64)]
        cycles: u64,
    },
    /// Inductive halting verdict for a machine on an input.
    HaltingItm {
        #[arg(long)]
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 1000)]
        horizon: u64,
    },
    /// Build the diagonal machine for a decider and run it on its own code.
    Diagonal {
        /// `const1`, `const0`, `sim`, `all`, or a machine file.
        #[arg(long, default_value = "all")]
        decider: String,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
    },
    /// Check the reduction of inductive results to totality.
    Reduce {
        #[arg(long)]
        machine: String,
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long, default_value_t = 8)]
        probes: u64,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
    },
    /// Inductive orders of the classical problems.
    Orders {
        /// One problem, e.g. `HP` or `RPI_3`; all rows when omitted.
        problem: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::RunTm { .. } => "run-tm",
            Command::RunItm { .. } => "run-itm",
            Command::Complexity { .. } => "complexity",
            Command::FuncComplexity { .. } => "func-complexity",
            Command::Invariance { .. } => "invariance",
            Command::EnumerateNontotal { .. } => "enumerate-nontotal",
            Command::Emptiness { .. } => "emptiness",
            Command::Totality { .. } => "totality",
            Command::HaltingItm { .. } => "halting-itm",
            Command::Diagonal { .. } => "diagonal",
            Command::Reduce { .. } => "reduce",
            Command::Orders { .. } => "orders",
        }
    }
}

/// Names accepted after `builtin:`.
pub const BUILTIN_MACHINES: [&str; 15] = [
    "id", "c0", "ceps", "append0", "never", "eps-only", "x3-only", "blocked", "writer", "alternator", "silent",
    "writer-final", "const1", "const0", "totality-scanner",
];

fn builtin(name: &str) -> Option<Machine> {
    let tm = |t: crate::tm::TmTable| Some(Machine::Tm(t.into()));
    let itm = |t: crate::itm::ItmTable| Some(Machine::Itm(t.into()));
    match name {
        "id" => tm(machines::identity()),
        "c0" => tm(machines::const_zero()),
        "ceps" => tm(machines::const_empty()),
        "append0" => tm(machines::append_zero()),
        "never" => tm(machines::never()),
        "eps-only" => tm(machines::halts_on_empty_only()),
        "x3-only" => tm(machines::halts_on_x3_only()),
        "blocked" => tm(machines::blocked()),
        "writer" => itm(machines::writer()),
        "alternator" => itm(machines::alternator()),
        "silent" => itm(machines::silent()),
        "writer-final" => itm(machines::writer_final()),
        "const1" => itm(machines::const_one_decider()),
        "const0" => itm(machines::const_zero_decider()),
        "totality-scanner" => itm(crate::hierarchy::solvers::totality_scanner()),
        _ => None,
    }
}

/// Loads `builtin:<name>` or a machine file.
pub fn load_machine(spec: &str) -> Result<Machine> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name)
            .ok_or_else(|| Error::Usage(format!("unknown builtin machine {name:?}; known: {}", BUILTIN_MACHINES.join(", "))));
    }
    let text = std::fs::read_to_string(Path::new(spec)).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    parse_machine_file(&text)
}

fn load_tm(spec: &str) -> Result<MachineTM> {
    match load_machine(spec)? {
        Machine::Tm(m) => Ok(m),
        Machine::Itm(_) => Err(Error::Usage(format!("{spec} is an inductive machine; a Turing machine is needed here"))),
    }
}

fn load_itm(spec: &str) -> Result<MachineITM> {
    match load_machine(spec)? {
        Machine::Itm(m) => Ok(m),
        Machine::Tm(_) => Err(Error::Usage(format!("{spec} is a Turing machine; an inductive machine is needed here"))),
    }
}

fn word(s: &str) -> Result<Word> {
    Alphabet::binary().word(s).map_err(|e| Error::Usage(e.to_string()))
}

fn interpreter(s: &str) -> Result<UniversalInterpreter> {
    match s {
        "std" | "tm" => Ok(UniversalInterpreter::Standard),
        "wrap" => Ok(wrap_universal(UniversalInterpreter::Standard)),
        _ => match s.strip_prefix("biased:").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 1 => Ok(make_biased_universal(n)),
            _ => Err(Error::Usage(format!("unknown interpreter {s:?}; use std, wrap or biased:<n> with n >= 1"))),
        },
    }
}

fn class(s: &str) -> Result<MachineClassHandle> {
    match s {
        "itm" => Ok(MachineClassHandle::Itm1),
        _ => interpreter(s).map(MachineClassHandle::Tm),
    }
}

fn parse_pairs(s: &str) -> Result<FunctionTable> {
    let pairs = s
        .split(',')
        .map(|item| {
            let (x, v) = item.split_once('=').ok_or_else(|| Error::Usage(format!("probe {item:?} is not of the form x=v")))?;
            Ok((word(x.trim())?, word(v.trim())?))
        })
        .collect::<Result<Vec<_>>>()?;
    FunctionTable::new(pairs).map_err(|e| Error::Usage(e.to_string()))
}

fn pool_codes(specs: &[String]) -> Result<Vec<Word>> {
    if specs.is_empty() {
        return machines::standard_pool().iter().map(|m| encode_tm(&m.machine)).collect();
    }
    specs.iter().map(|s| encode_tm(&load_tm(s)?)).collect()
}

/// What a subcommand produced: a JSON value and its text rendering.
struct Outcome {
    value: Value,
    text: String,
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn execute(cmd: &Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::RunTm { machine, input, fuel } => {
            let m = load_tm(machine)?;
            let x = word(input)?;
            let o = run_fueled(&m, &x, *fuel)?;
            let text = match o.output() {
                Some(w) => format!("{}: halted with {w:?} after {} steps", m.name(), o.steps()),
                None => format!("{}: no result after {} steps ({o:?})", m.name(), o.steps()),
            };
            Outcome { value: json!({ "machine": m.name(), "input": x, "fuel": fuel, "outcome": o }), text }
        }
        Command::RunItm { machine, input, horizon } => {
            let m = load_itm(machine)?;
            let x = word(input)?;
            let (o, history) = itm_run_traced(&m, &x, *horizon)?;
            let text = format!("{}: {o}", m.name());
            Outcome { value: json!({ "machine": m.name(), "input": x, "horizon": horizon, "outcome": o, "history": history }), text }
        }
        Command::Complexity { class: c, predicates, budget } => {
            let cls = class(c)?;
            let preds = predicates.iter().map(|p| Predicate::parse(p).map_err(|e| Error::Usage(e.to_string()))).collect::<Result<Vec<_>>>()?;
            let r = if preds.len() == 1 {
                problem_complexity_report(&cls, &preds[0], &budget.budget())
            } else {
                set_complexity_report(&cls, &PredicateSet::new(preds)?, &budget.budget())
            };
            let text = format!("{} under {}: {} ({} programs scanned)", r.predicate, r.class, r.verdict(), r.programs_scanned);
            Outcome { value: to_value(&r), text }
        }
        Command::FuncComplexity { class: c, pairs, machine, probe_len, budget } => {
            let cls = class(c)?;
            let table = match (pairs, machine) {
                (Some(p), _) => parse_pairs(p)?,
                (None, Some(m)) => {
                    let m = load_tm(m)?;
                    let pairs = Alphabet::binary()
                        .words_up_to(*probe_len)
                        .map(|x| match run_fueled(&m, &x, budget.fuel)?.output() {
                            Some(v) => Ok((x, v.clone())),
                            None => Err(Error::Usage(format!("{} gives no result on {x:?} within the fuel", m.name()))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    FunctionTable::new(pairs)?
                }
                (None, None) => return Err(Error::Usage("give --pairs or --machine".into())),
            };
            let r = functional_complexity_report(&cls, &table, &budget.budget());
            let text = format!("{} under {}: {}", r.predicate, r.class, r.verdict());
            Outcome { value: to_value(&r), text }
        }
        Command::Invariance { second, words_up_to, predicates, budget } => {
            let u2 = interpreter(second)?;
            let mut family: Vec<Predicate> = Alphabet::binary().words_up_to(*words_up_to).map(Predicate::Equals).collect();
            for p in predicates {
                family.push(Predicate::parse(p).map_err(|e| Error::Usage(e.to_string()))?);
            }
            let r = invariance_gap(&UniversalInterpreter::Standard, &u2, &family, &budget.budget());
            let k = r.k.map_or("undefined".to_string(), |k| k.to_string());
            let mut text = format!("{} vs {}: k = {k} over {} predicates", r.first, r.second, r.rows.len());
            for w in &r.warnings {
                text.push_str(&format!("\nwarning: {w}"));
            }
            Outcome { value: to_value(&r), text }
        }
        Command::EnumerateNontotal { machines: specs, cycles } => {
            let pool = pool_codes(specs)?;
            let e = dovetail_nontotal(&pool, *cycles)?;
            let names: Vec<String> = e
                .stable_prefix_estimate
                .iter()
                .map(|c| pool.iter().position(|p| p == c).map_or(c.to_string(), |i| format!("#{i}")))
                .collect();
            let text = format!("after {} cycles the stable prefix holds {} machines: {}", e.cycle, names.len(), names.join(" "));
            Outcome { value: to_value(&e), text }
        }
        Command::Emptiness { machine, cycles } => {
            let code = encode_tm(&load_tm(machine)?)?;
            let v = emptiness_solver(&code, *cycles)?;
            Outcome { text: verdict_text("emptiness", &v), value: to_value(&v) }
        }
        Command::Totality { machines: specs, index, cycles } => {
            let pool = pool_codes(specs)?;
            let v = totality_verdict(&pool, *index, *cycles).map_err(|e| match e {
                Error::IndexOutOfRange { .. } => Error::Usage(e.to_string()),
                other => other,
            })?;
            Outcome { text: verdict_text("totality", &v), value: to_value(&v) }
        }
        Command::HaltingItm { machine, input, horizon } => {
            let code = encode_tm(&load_tm(machine)?)?;
            let v = halting_itm(&code, &word(input)?, *horizon)?;
            Outcome { text: verdict_text("halting", &v), value: to_value(&v) }
        }
        Command::Diagonal { decider, horizon } => {
            let deciders = match decider.as_str() {
                "all" => candidate_deciders(),
                "const1" => vec![candidate_deciders().remove(0)],
                "const0" => vec![candidate_deciders().remove(1)],
                "sim" => vec![candidate_deciders().remove(2)],
                other => vec![load_itm(other)?],
            };
            let reports = deciders.iter().map(|d| diagonal_experiment(d, *horizon)).collect::<Result<Vec<_>>>()?;
            let text = reports
                .iter()
                .map(|r| {
                    let claim = r.decider_claims_result.map_or("no answer".to_string(), |b| format!("claims result = {b}"));
                    format!("{}: {claim}; machine {}; contradiction = {}", r.decider, r.machine_outcome, r.contradiction)
                })
                .collect::<Vec<_>>()
                .join("\n");
            Outcome { value: json!({ "horizon": horizon, "reports": reports }), text }
        }
        Command::Reduce { machine, x, probes, fuel, horizon } => {
            let m = load_itm(machine)?;
            encode_itm(&m)?;
            let r = reduction_check(&m, &word(x)?, *probes, *fuel, *horizon)?;
            let text = format!(
                "{} on {:?}: total on {} probes = {}, result defined = {}, agrees = {}",
                r.machine,
                r.x,
                r.probes.len(),
                r.total_on_probes,
                r.itm_defined,
                r.agrees
            );
            Outcome { value: to_value(&r), text }
        }
        Command::Orders { problem } => {
            let rows = match problem {
                Some(p) => vec![order_lookup(p).map_err(|e| Error::Usage(e.to_string()))?],
                None => order_table(),
            };
            let text = rows.iter().map(|r| format!("{} → {} ({})", r.problem, r.order, r.citation)).collect::<Vec<_>>().join("\n");
            Outcome { value: json!({ "rows": rows }), text }
        }
    })
}

fn verdict_text(what: &str, v: &crate::hierarchy::InductiveVerdict) -> String {
    let value = v.value.as_ref().map_or("none".to_string(), |w| format!("{w:?}"));
    let since = v.stabilized_since.map_or("-".to_string(), |s| s.to_string());
    format!("{what}: value {value}, stable since {since}, budget {}, halted {}", v.budget, v.halted)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::InvalidPredicate(_) | Error::UnknownProblem(_) | Error::InvalidTable(_) => 2,
        _ => 1,
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes the report. Returns the exit status.
pub fn dispatch<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let started = Instant::now();
    let result = match cli.jobs {
        Some(0) => Err(Error::Usage("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(Error::Usage(format!("cannot start {n} worker threads: {e}"))),
        },
        None => execute(&cli.command),
    };
    match result {
        Ok(o) => {
            let written = if cli.json {
                let mut doc = match o.value {
                    Value::Object(m) => m,
                    other => serde_json::Map::from_iter([("result".to_string(), other)]),
                };
                doc.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
                doc.insert("command".into(), json!(cli.command.name()));
                doc.insert("elapsed_ms".into(), json!(started.elapsed().as_millis() as u64));
                writeln!(out, "{}", Value::Object(doc))
            } else {
                writeln!(out, "{}", o.text)
            };
            if written.is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "itmc: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = dispatch(std::iter::once("itmc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn orders_row() {
        let (code, text) = call(&["orders", "HP"]);
        assert_eq!(code, 0);
        assert_eq!(text.trim(), "HP → 1 (Thm 8.1)");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["complexity", "--predicate", "nope"]).0, 2);
        assert_eq!(call(&["run-tm", "--machine", "/no/such/file.tm"]).0, 1);
        assert_eq!(call(&["run-tm", "--machine", "builtin:id", "--input", "101", "--fuel", "100"]).0, 0);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn json_report_fields() {
        let (code, text) = call(&["--json", "complexity", "--predicate", "nonempty", "--max-len", "6", "--fuel", "100"]);
        assert_eq!(code, 0, "{text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        for f in ["kind", "value", "witness", "budget", "class", "predicate", "programs_scanned", "runs_halted", "tool_version", "command", "elapsed_ms"] {
            assert!(v.get(f).is_some(), "missing {f}");
        }
        assert_eq!(v["command"], "complexity");
    }
}
