//! The line-oriented machine description format.
//!
//! ```text
//! # copies its input to the output tape
//! machine id
//! kind tm
//! alphabet 01
//! states s0 s1
//! start s0
//! final s1
//! trans s0 0 _ _ -> s0 0 _ 0 R S R
//! trans s0 1 _ _ -> s0 1 _ 1 R S R
//! trans s0 _ _ _ -> s1 _ _ _ S S S
//! ```
//!
//! Inductive machines use `kind itm`, declare `conn-types` and a `memory`,
//! and list `rule` lines instead of `trans` lines. An explicit memory is
//! spelled out with `cell` and `link` lines.

use std::collections::{BTreeSet, HashMap};

use crate::codec::Machine;
use crate::error::{Error, Result};
use crate::itm::{BuiltinMemory, ExplicitMemory, ItmBuilder, ItmTable, MachineITM, MemorySpec, Region};
use crate::tm::{MachineTM, Move, TmBuilder, TmTable};
use crate::words::Alphabet;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn symbol(line: usize, s: &str) -> Result<u8> {
    match s.as_bytes() {
        [c] => Ok(*c),
        _ => Err(err(line, format!("expected a single symbol, got {s:?}"))),
    }
}

#[derive(Default)]
struct Header {
    name: Option<String>,
    kind: Option<String>,
    alphabet: Option<Alphabet>,
    states: Vec<String>,
    start: Option<String>,
    finals: Vec<String>,
    conn_types: Vec<String>,
    memory: Option<String>,
}

/// A rule line kept until the header is complete.
struct PendingRule {
    line: usize,
    from: String,
    read: Vec<u8>,
    to: String,
    write: Vec<u8>,
    moves: Vec<Move>,
    conn: Option<String>,
}

fn set_once<T>(slot: &mut Option<T>, v: T, line: usize, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(err(line, format!("{what} given twice")));
    }
    *slot = Some(v);
    Ok(())
}

fn parse_trans(line: usize, rest: &[&str]) -> Result<PendingRule> {
    // q r1 r2 r3 -> q' w1 w2 w3 m1 m2 m3
    if rest.len() != 12 || rest[4] != "->" {
        return Err(err(line, "expected `trans <q> <r1> <r2> <r3> -> <q'> <w1> <w2> <w3> <m1> <m2> <m3>`"));
    }
    let read = rest[1..4].iter().map(|s| symbol(line, s)).collect::<Result<_>>()?;
    let write = rest[6..9].iter().map(|s| symbol(line, s)).collect::<Result<_>>()?;
    let moves = rest[9..12]
        .iter()
        .map(|m| Move::from_letter(m).ok_or_else(|| err(line, format!("unknown move {m:?}, expected L, R or S"))))
        .collect::<Result<_>>()?;
    Ok(PendingRule { line, from: rest[0].into(), read, to: rest[5].into(), write, moves, conn: None })
}

fn parse_rule(line: usize, rest: &[&str]) -> Result<PendingRule> {
    let usage = || err(line, "expected `rule <q> <sym> -> [write <sym>] [move <type>] <q'>`");
    if rest.len() < 5 || rest[2] != "->" {
        return Err(usage());
    }
    let read = vec![symbol(line, rest[1])?];
    let mut tail = &rest[3..];
    let mut write = Vec::new();
    let mut conn = None;
    if tail.first() == Some(&"write") {
        write.push(symbol(line, tail.get(1).ok_or_else(usage)?)?);
        tail = &tail[2..];
    }
    if tail.first() == Some(&"move") {
        conn = Some(tail.get(1).ok_or_else(usage)?.to_string());
        tail = &tail[2..];
    }
    match tail {
        [to] if !write.is_empty() || conn.is_some() => {
            Ok(PendingRule { line, from: rest[0].into(), read, to: to.to_string(), write, moves: Vec::new(), conn })
        }
        _ => Err(usage()),
    }
}

/// Parses one machine description.
pub fn parse_machine_file(text: &str) -> Result<Machine> {
    let mut h = Header::default();
    let mut rules = Vec::new();
    let mut cells: Vec<(usize, String, Region)> = Vec::new();
    let mut links: Vec<(usize, String, String, String)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, rest)) = words.split_first() else { continue };
        let one = |what: &str| -> Result<String> {
            match rest {
                [v] => Ok(v.to_string()),
                _ => Err(err(line, format!("`{what}` takes exactly one argument"))),
            }
        };
        match directive {
            "machine" => set_once(&mut h.name, one("machine")?, line, "machine name")?,
            "kind" => {
                let k = one("kind")?;
                if k != "tm" && k != "itm" {
                    return Err(err(line, format!("unknown kind {k:?}, expected tm or itm")));
                }
                set_once(&mut h.kind, k, line, "kind")?
            }
            "alphabet" => {
                let a = Alphabet::new(one("alphabet")?.as_bytes()).map_err(|e| err(line, e.to_string()))?;
                set_once(&mut h.alphabet, a, line, "alphabet")?
            }
            "states" => h.states.extend(rest.iter().map(|s| s.to_string())),
            "start" => set_once(&mut h.start, one("start")?, line, "start state")?,
            "final" => h.finals.extend(rest.iter().map(|s| s.to_string())),
            "conn-types" => h.conn_types.extend(rest.iter().map(|s| s.to_string())),
            "memory" => set_once(&mut h.memory, one("memory")?, line, "memory")?,
            "cell" => match rest {
                [id, region] => {
                    let r = Region::parse(region)
                        .ok_or_else(|| err(line, format!("unknown region {region:?}, expected input, work or output")))?;
                    cells.push((line, id.to_string(), r));
                }
                _ => return Err(err(line, "expected `cell <id> <input|work|output>`")),
            },
            "link" => match rest {
                [from, ty, to] => links.push((line, from.to_string(), ty.to_string(), to.to_string())),
                _ => return Err(err(line, "expected `link <from> <type> <to>`")),
            },
            "trans" => rules.push(parse_trans(line, rest)?),
            "rule" => rules.push(parse_rule(line, rest)?),
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    let end = last_line.max(1);
    let name = h.name.clone().ok_or_else(|| err(end, "missing `machine <name>`"))?;
    let kind = h.kind.clone().ok_or_else(|| err(end, "missing `kind tm|itm`"))?;
    let alphabet = h.alphabet.clone().ok_or_else(|| err(end, "missing `alphabet`"))?;
    let start = h.start.clone().ok_or_else(|| err(end, "missing `start`"))?;
    if h.states.is_empty() {
        return Err(err(end, "missing `states`"));
    }
    let declared: BTreeSet<&str> = h.states.iter().map(String::as_str).collect();
    if declared.len() != h.states.len() {
        return Err(err(end, "a state is declared twice"));
    }
    for s in std::iter::once(&start).chain(&h.finals) {
        if !declared.contains(s.as_str()) {
            return Err(err(end, format!("undeclared state {s:?}")));
        }
    }
    let mut first_seen: HashMap<(String, Vec<u8>), usize> = HashMap::new();
    for r in &rules {
        for q in [&r.from, &r.to] {
            if !declared.contains(q.as_str()) {
                return Err(err(r.line, format!("undeclared state {q:?}")));
            }
        }
        if let Some(prev) = first_seen.insert((r.from.clone(), r.read.clone()), r.line) {
            return Err(Error::Determinism(format!(
                "lines {prev} and {} both give a rule for state {} reading {}",
                r.line,
                r.from,
                String::from_utf8_lossy(&r.read)
            )));
        }
    }
    let at_line = |line: usize| move |e: Error| match e {
        Error::Parse { .. } | Error::Determinism(_) => e,
        other => err(line, other.to_string()),
    };
    match kind.as_str() {
        "tm" => {
            if h.memory.is_some() || !h.conn_types.is_empty() || !cells.is_empty() || !links.is_empty() {
                return Err(err(end, "memory, conn-types, cell and link belong to `kind itm`"));
            }
            let mut b = TmBuilder::new(&name, alphabet);
            for s in &h.states {
                b.state(s);
            }
            b.start(&start);
            for f in &h.finals {
                b.final_state(f);
            }
            for r in &rules {
                if r.moves.is_empty() {
                    return Err(err(r.line, "`rule` lines belong to `kind itm`; use `trans`"));
                }
                let moves: String = r.moves.iter().map(|m| m.letter()).collect();
                b.rule(
                    &r.from,
                    std::str::from_utf8(&r.read).unwrap_or(""),
                    &r.to,
                    std::str::from_utf8(&r.write).unwrap_or(""),
                    &moves,
                )
                .map_err(at_line(r.line))?;
            }
            Ok(Machine::Tm(MachineTM::Table(b.build().map_err(at_line(end))?)))
        }
        _ => {
            let memory_name = h.memory.clone().ok_or_else(|| err(end, "missing `memory`"))?;
            let types: Vec<&str> = h.conn_types.iter().map(String::as_str).collect();
            let memory = if memory_name == "explicit" {
                let mut e = ExplicitMemory::default();
                for (line, id, region) in &cells {
                    if e.cell_index(id).is_some() {
                        return Err(err(*line, format!("cell {id:?} declared twice")));
                    }
                    e.cells.push((id.clone(), *region));
                }
                for (line, from, ty, to) in &links {
                    let idx = |c: &str| e.cell_index(c).ok_or_else(|| err(*line, format!("unknown cell {c:?}")));
                    let t = types.iter().position(|t| t == ty).ok_or_else(|| err(*line, format!("undeclared connection type {ty:?}")))?;
                    let (f, d) = (idx(from)?, idx(to)?);
                    if e.links.iter().any(|&(f2, t2, _)| f2 == f && t2 == t) {
                        return Err(err(*line, format!("cell {from} already has a {ty} connection")));
                    }
                    e.links.insert((f, t, d));
                }
                MemorySpec::Explicit(e)
            } else {
                if !cells.is_empty() || !links.is_empty() {
                    return Err(err(end, "`cell` and `link` need `memory explicit`"));
                }
                let b = memory_name
                    .strip_prefix("builtin:")
                    .and_then(BuiltinMemory::from_name)
                    .ok_or_else(|| err(end, format!("unknown memory {memory_name:?}")))?;
                MemorySpec::Builtin(b)
            };
            let mut b = ItmBuilder::new(&name, alphabet, memory, &types);
            for s in &h.states {
                b.state(s);
            }
            b.start(&start);
            for f in &h.finals {
                b.final_state(f);
            }
            for r in &rules {
                if !r.moves.is_empty() {
                    return Err(err(r.line, "`trans` lines belong to `kind tm`; use `rule`"));
                }
                if let Some(c) = &r.conn {
                    if !types.contains(&c.as_str()) {
                        return Err(err(r.line, format!("undeclared connection type {c:?}")));
                    }
                }
                b.rule(&r.from, r.read[0], r.write.first().copied(), r.conn.as_deref(), &r.to).map_err(at_line(r.line))?;
            }
            Ok(Machine::Itm(MachineITM::Table(b.build().map_err(at_line(end))?)))
        }
    }
}

fn sym(s: u8) -> char {
    s as char
}

fn header(out: &mut String, name: &str, kind: &str, alphabet: &Alphabet, states: &[String], start: usize, finals: &BTreeSet<usize>) {
    out.push_str(&format!("machine {name}\nkind {kind}\n"));
    out.push_str(&format!("alphabet {}\n", String::from_utf8_lossy(alphabet.symbols())));
    out.push_str(&format!("states {}\n", states.join(" ")));
    out.push_str(&format!("start {}\n", states[start]));
    let f: Vec<&str> = finals.iter().map(|&q| states[q].as_str()).collect();
    out.push_str(&format!("final {}\n", f.join(" ")).trim_end());
    out.push('\n');
}

pub fn tm_to_file(t: &TmTable) -> String {
    let mut out = String::new();
    header(&mut out, &t.name, "tm", &t.alphabet, &t.states, t.start, &t.finals);
    for ((q, r), a) in &t.rules {
        out.push_str(&format!(
            "trans {} {} {} {} -> {} {} {} {} {} {} {}\n",
            t.states[*q],
            sym(r[0]),
            sym(r[1]),
            sym(r[2]),
            t.states[a.next],
            sym(a.write[0]),
            sym(a.write[1]),
            sym(a.write[2]),
            a.moves[0].letter(),
            a.moves[1].letter(),
            a.moves[2].letter()
        ));
    }
    out
}

pub fn itm_to_file(t: &ItmTable) -> String {
    let mut out = String::new();
    header(&mut out, &t.name, "itm", &t.alphabet, &t.states, t.start, &t.finals);
    out.push_str(&format!("conn-types {}\n", t.conn_types.join(" ")));
    match &t.memory {
        MemorySpec::Builtin(b) => out.push_str(&format!("memory builtin:{}\n", b.name())),
        MemorySpec::Explicit(e) => {
            out.push_str("memory explicit\n");
            for (id, r) in &e.cells {
                out.push_str(&format!("cell {id} {}\n", r.keyword()));
            }
            for &(f, ty, d) in &e.links {
                out.push_str(&format!("link {} {} {}\n", e.cells[f].0, t.conn_types[ty], e.cells[d].0));
            }
        }
    }
    for (&(q, s), r) in &t.rules {
        out.push_str(&format!("rule {} {} ->", t.states[q], sym(s)));
        if let Some(w) = r.write {
            out.push_str(&format!(" write {}", sym(w)));
        }
        if let Some(c) = r.conn {
            out.push_str(&format!(" move {}", t.conn_types[c]));
        }
        out.push_str(&format!(" {}\n", t.states[r.next]));
    }
    out
}

/// Writes a table machine back in the file format. Host-level builtin
/// machines have no table and are rejected.
pub fn to_machine_file(m: &Machine) -> Result<String> {
    match m {
        Machine::Tm(MachineTM::Table(t)) => Ok(tm_to_file(t)),
        Machine::Itm(MachineITM::Table(t)) => Ok(itm_to_file(t)),
        Machine::Tm(other) => Err(Error::Usage(format!("{} is a builtin machine without a table", other.name()))),
        Machine::Itm(other) => Err(Error::Usage(format!("{} is a builtin machine without a table", other.name()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines;
    use crate::tm::run_fueled;
    use crate::words::w;

    const ID: &str = "\
machine id
kind tm
alphabet 01
states s0 s1
start s0
final s1
trans s0 0 _ _ -> s0 0 _ 0 R S R
trans s0 1 _ _ -> s0 1 _ 1 R S R
trans s0 _ _ _ -> s1 _ _ _ S S S
";

    #[test]
    fn identity_file_behaves_as_identity() {
        let Machine::Tm(m) = parse_machine_file(ID).unwrap() else { panic!("tm expected") };
        for x in Alphabet::binary().words_up_to(4) {
            assert_eq!(run_fueled(&m, &x, 100).unwrap().output(), Some(&x));
        }
    }

    #[test]
    fn duplicate_left_parts_name_both_lines() {
        let text = format!("{ID}trans s0 0 _ _ -> s1 0 _ _ S S S\n");
        match parse_machine_file(&text) {
            Err(Error::Determinism(msg)) => assert!(msg.contains("lines 7 and 10"), "{msg}"),
            other => panic!("expected a determinism error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_connection_type() {
        let text = "machine m\nkind itm\nalphabet 01\nstates a\nstart a\nconn-types L R\nmemory builtin:linear\nrule a _ -> move U a\n";
        match parse_machine_file(text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 8);
                assert!(message.contains("\"U\""));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "machine m\nkind tm\nalphabet 01\nstates a\nstart a\nbogus 1\n";
        assert_eq!(parse_machine_file(bad), Err(err(6, "unknown directive \"bogus\"")));
        let bad = "machine m\nkind tm\nalphabet 01\nstates a\nstart a\ntrans a 0 _ _ -> a 0 _ _ X S S\n";
        assert!(matches!(parse_machine_file(bad), Err(Error::Parse { line: 6, .. })));
        let bad = "machine m\nkind tm\nalphabet 01\nstates a\nstart a\ntrans a 0 _ _ -> a 1 _ _ S S S\n";
        assert!(matches!(parse_machine_file(bad), Err(Error::Parse { line: 6, .. })));
    }

    #[test]
    fn library_tables_round_trip() {
        let tms = [machines::identity(), machines::never(), machines::halts_on_x3_only(), machines::append_zero()];
        for t in tms {
            let m = Machine::Tm(t.into());
            let text = to_machine_file(&m).unwrap();
            assert_eq!(parse_machine_file(&text).unwrap(), m, "{text}");
        }
        for t in [machines::writer(), machines::alternator(), machines::writer_final(), crate::hierarchy::solvers::totality_scanner()] {
            let m = Machine::Itm(t.into());
            let text = to_machine_file(&m).unwrap();
            assert_eq!(parse_machine_file(&text).unwrap(), m, "{text}");
        }
    }

    #[test]
    fn explicit_memory() {
        let text = "\
machine two
kind itm
alphabet 1
states a b c
start a
final c
conn-types next
memory explicit
cell i input
cell o output
link i next o
rule a _ -> move next b
rule a _ -> move next c
# the output cell has no next link, so the head stays and writes
rule b _ -> write 1 move next c
";
        assert!(matches!(parse_machine_file(text), Err(Error::Determinism(_))));
        let text = text.replace("rule a _ -> move next c\n", "");
        let Machine::Itm(m) = parse_machine_file(&text).unwrap() else { panic!("itm expected") };
        let out = crate::itm::itm_run(&m, &w(""), 10).unwrap();
        assert_eq!(out.result(), Some(&w("1")));
        let again = parse_machine_file(&to_machine_file(&Machine::Itm(m.clone())).unwrap()).unwrap();
        assert_eq!(again, Machine::Itm(m));
    }
}
