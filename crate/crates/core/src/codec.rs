//! Machine codes: an injective, decodable binary serialization of machines.
//!
//! A code is a sequence of 2-bit tokens `0..=3`, each written as two binary
//! symbols. Two forms exist:
//!
//! * **op form**: tokens from `{0, 1, 2}` only, read as a straight-line
//!   program: `0` emits `0`, `1` emits `1`, `2` copies the input to the
//!   output and rewinds the input head. The empty code is the machine that
//!   halts at once with empty output.
//! * **general form**: token `3`, then a kind number and the kind's fields.
//!   Numbers are little-endian base-3 digit tokens closed by a `3`.
//!
//! | kind | machine | fields |
//! |------|---------|--------|
//! | 0 | TM table | alphabet, states, finals, rules |
//! | 1 | ITM table | alphabet, states, finals, connection types, rules, memory |
//! | 2 | diagonal pipeline | nested decider code |
//! | 3 | simulation decider | fuel |
//! | 4 | range enumerator | nested TM code |
//! | 5 | totalizer | nested TM code |
//! | 6 | reduction | nested ITM code, word |
//!
//! Machines are canonicalized before encoding, and decoding re-encodes its
//! result and rejects any mismatch, so the set of valid codes is exactly
//! the image of [`encode_machine`].

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::itm::{BuiltinMemory, ExplicitMemory, ItmRule, ItmTable, MachineITM, MemorySpec, Region};
use crate::tm::{MachineTM, Move, TmAction, TmBuilder, TmTable};
use crate::words::{Alphabet, Word, BLANK};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    Tm(MachineTM),
    Itm(MachineITM),
}

impl From<MachineTM> for Machine {
    fn from(m: MachineTM) -> Self {
        Machine::Tm(m)
    }
}

impl From<MachineITM> for Machine {
    fn from(m: MachineITM) -> Self {
        Machine::Itm(m)
    }
}

/// Straight-line instructions of the op form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Emit0,
    Emit1,
    Copy,
}

impl Op {
    fn token(self) -> u8 {
        match self {
            Op::Emit0 => 0,
            Op::Emit1 => 1,
            Op::Copy => 2,
        }
    }
}

/// The transition table of an op-form program over the binary alphabet.
pub fn compile_ops(name: &str, ops: &[Op]) -> TmTable {
    let mut b = TmBuilder::new(name, Alphabet::binary());
    let s = |i: usize| format!("s{i}");
    b.start(&s(0)).final_state(&s(ops.len()));
    for (i, op) in ops.iter().enumerate() {
        let (here, next) = (s(i), s(i + 1));
        let r = |x: char| format!("{x}__");
        let rule = |b: &mut TmBuilder, from: &str, read: String, to: &str, write: String, mv: &str| {
            b.rule(from, &read, to, &write, mv).expect("op compiler emits valid rules");
        };
        match op {
            Op::Emit0 | Op::Emit1 => {
                let out = if *op == Op::Emit0 { '0' } else { '1' };
                for x in ['0', '1', '_'] {
                    rule(&mut b, &here, r(x), &next, format!("{x}_{out}"), "SSR");
                }
            }
            Op::Copy => {
                let back = format!("r{i}");
                for x in ['0', '1'] {
                    rule(&mut b, &here, r(x), &here, format!("{x}_{x}"), "RSR");
                    rule(&mut b, &back, r(x), &back, r(x), "LSS");
                }
                rule(&mut b, &here, r('_'), &back, r('_'), "LSS");
                rule(&mut b, &back, r('_'), &next, r('_'), "RSS");
            }
        }
    }
    b.build().expect("op compiler emits a valid table")
}

/// Recovers the op program of a table compiled by [`compile_ops`].
pub fn decompile_ops(t: &TmTable) -> Option<Vec<Op>> {
    if t.alphabet != Alphabet::binary() {
        return None;
    }
    let blank = [BLANK; 3];
    let mut ops = Vec::new();
    let mut cur = t.start;
    while !t.finals.contains(&cur) {
        if ops.len() > t.states.len() {
            return None;
        }
        let act = t.rules.get(&(cur, blank))?;
        match act.moves {
            [Move::Stay, Move::Stay, Move::Right] if act.write[2] == b'0' => ops.push(Op::Emit0),
            [Move::Stay, Move::Stay, Move::Right] if act.write[2] == b'1' => ops.push(Op::Emit1),
            [Move::Left, Move::Stay, Move::Stay] => ops.push(Op::Copy),
            _ => return None,
        }
        cur = if ops.last() == Some(&Op::Copy) { t.rules.get(&(act.next, blank))?.next } else { act.next };
    }
    let c = compile_ops(&t.name, &ops).canonicalize();
    c.same_table(&t.canonicalize()).then_some(ops)
}

pub fn tokens_to_word(tokens: &[u8]) -> Word {
    let mut bits = Vec::with_capacity(tokens.len() * 2);
    for &t in tokens {
        bits.push(if t & 2 != 0 { b'1' } else { b'0' });
        bits.push(if t & 1 != 0 { b'1' } else { b'0' });
    }
    Word::from_bytes(bits)
}

pub fn word_to_tokens(w: &Word) -> Result<Vec<u8>> {
    let b = w.as_bytes();
    if b.len() % 2 != 0 {
        return Err(Error::InvalidCode("odd length".into()));
    }
    b.chunks(2)
        .map(|p| match p {
            [x, y] if matches!(x, b'0' | b'1') && matches!(y, b'0' | b'1') => Ok((x - b'0') * 2 + (y - b'0')),
            _ => Err(Error::InvalidCode("code words are binary".into())),
        })
        .collect()
}

#[derive(Default)]
struct Writer {
    tokens: Vec<u8>,
}

impl Writer {
    fn num(&mut self, mut n: u64) {
        while n > 0 {
            self.tokens.push((n % 3) as u8);
            n /= 3;
        }
        self.tokens.push(3);
    }

    fn bytes(&mut self, b: &[u8]) {
        self.num(b.len() as u64);
        for &x in b {
            self.num(x as u64);
        }
    }

    fn nested(&mut self, tokens: &[u8]) {
        self.num(tokens.len() as u64);
        self.tokens.extend_from_slice(tokens);
    }
}

struct Reader<'a> {
    tokens: &'a [u8],
    pos: usize,
}

fn bad(msg: &str) -> Error {
    Error::InvalidCode(msg.to_string())
}

impl<'a> Reader<'a> {
    fn remaining(&self) -> usize {
        self.tokens.len() - self.pos
    }

    fn num(&mut self) -> Result<u64> {
        let mut n: u64 = 0;
        let mut scale: u64 = 1;
        loop {
            let t = *self.tokens.get(self.pos).ok_or_else(|| bad("truncated number"))?;
            self.pos += 1;
            if t == 3 {
                return Ok(n);
            }
            n = (t as u64).checked_mul(scale).and_then(|d| n.checked_add(d)).ok_or_else(|| bad("number overflow"))?;
            scale = scale.checked_mul(3).ok_or_else(|| bad("number overflow"))?;
        }
    }

    /// A count of items that each take at least one token.
    fn count(&mut self) -> Result<usize> {
        let n = self.num()?;
        if n > self.remaining() as u64 {
            return Err(bad("count exceeds code length"));
        }
        Ok(n as usize)
    }

    fn index(&mut self, bound: usize) -> Result<usize> {
        let n = self.num()?;
        if n >= bound as u64 {
            return Err(bad("index out of range"));
        }
        Ok(n as usize)
    }

    fn bytes(&mut self) -> Result<Vec<u8>> {
        let n = self.count()?;
        (0..n).map(|_| self.index(256).map(|b| b as u8)).collect()
    }

    fn nested(&mut self) -> Result<&'a [u8]> {
        let n = self.count()?;
        let s = &self.tokens[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
}

fn sym_code(a: &Alphabet, s: u8) -> u64 {
    if s == BLANK {
        0
    } else {
        a.rank(s).expect("validated symbol") as u64 + 1
    }
}

fn code_sym(a: &Alphabet, c: usize) -> u8 {
    if c == 0 {
        BLANK
    } else {
        a.symbols()[c - 1]
    }
}

fn move_code(m: Move) -> u64 {
    match m {
        Move::Stay => 0,
        Move::Left => 1,
        Move::Right => 2,
    }
}

fn code_move(c: usize) -> Move {
    [Move::Stay, Move::Left, Move::Right][c]
}

fn write_alphabet(w: &mut Writer, a: &Alphabet) {
    w.bytes(a.symbols());
}

fn read_alphabet(r: &mut Reader) -> Result<Alphabet> {
    Alphabet::new(&r.bytes()?).map_err(|e| bad(&e.to_string()))
}

fn encode_tm_tokens(m: &MachineTM) -> Result<Vec<u8>> {
    let mut w = Writer::default();
    match m {
        MachineTM::Table(t) => {
            t.validate()?;
            let c = t.canonicalize();
            if let Some(ops) = decompile_ops(&c) {
                return Ok(ops.iter().map(|o| o.token()).collect());
            }
            w.tokens.push(3);
            w.num(0);
            write_alphabet(&mut w, &c.alphabet);
            w.num(c.states.len() as u64);
            w.num(c.finals.len() as u64);
            for &f in &c.finals {
                w.num(f as u64);
            }
            w.num(c.rules.len() as u64);
            for ((q, r), a) in &c.rules {
                w.num(*q as u64);
                for &s in r {
                    w.num(sym_code(&c.alphabet, s));
                }
                w.num(a.next as u64);
                w.num(sym_code(&c.alphabet, a.write[1]));
                w.num(sym_code(&c.alphabet, a.write[2]));
                for &mv in &a.moves {
                    w.num(move_code(mv));
                }
            }
        }
        MachineTM::RangeEnumerator(inner) | MachineTM::Totalizer(inner) => {
            w.tokens.push(3);
            w.num(if matches!(m, MachineTM::RangeEnumerator(_)) { 4 } else { 5 });
            w.nested(&encode_tm_tokens(inner)?);
        }
        MachineTM::Reduction { itm, x } => {
            let a = Alphabet::binary();
            a.validate(x)?;
            w.tokens.push(3);
            w.num(6);
            w.nested(&encode_itm_tokens(itm)?);
            w.num(x.len() as u64);
            for &s in x.as_bytes() {
                w.num(a.rank(s).expect("validated") as u64);
            }
        }
    }
    Ok(w.tokens)
}

fn encode_itm_tokens(m: &MachineITM) -> Result<Vec<u8>> {
    let mut w = Writer::default();
    w.tokens.push(3);
    match m {
        MachineITM::Table(t) => {
            t.validate()?;
            let c = t.canonicalize();
            w.num(1);
            write_alphabet(&mut w, &c.alphabet);
            w.num(c.states.len() as u64);
            w.num(c.finals.len() as u64);
            for &f in &c.finals {
                w.num(f as u64);
            }
            w.num(c.conn_types.len() as u64);
            for ty in &c.conn_types {
                w.bytes(ty.as_bytes());
            }
            w.num(c.rules.len() as u64);
            for (&(q, s), r) in &c.rules {
                w.num(q as u64);
                w.num(sym_code(&c.alphabet, s));
                match (r.write, r.conn) {
                    (Some(x), None) => {
                        w.num(0);
                        w.num(sym_code(&c.alphabet, x));
                    }
                    (None, Some(ty)) => {
                        w.num(1);
                        w.num(ty as u64);
                    }
                    (Some(x), Some(ty)) => {
                        w.num(2);
                        w.num(sym_code(&c.alphabet, x));
                        w.num(ty as u64);
                    }
                    (None, None) => unreachable!("validated rule"),
                }
                w.num(r.next as u64);
            }
            match &c.memory {
                MemorySpec::Explicit(e) => {
                    w.num(0);
                    w.num(e.cells.len() as u64);
                    for (_, region) in &e.cells {
                        w.num(*region as u64);
                    }
                    w.num(e.links.len() as u64);
                    for &(f, ty, to) in &e.links {
                        w.num(f as u64);
                        w.num(ty as u64);
                        w.num(to as u64);
                    }
                }
                MemorySpec::Builtin(b) => w.num(b.code()),
            }
        }
        MachineITM::Diagonal { decider } => {
            w.num(2);
            w.nested(&encode_itm_tokens(decider)?);
        }
        MachineITM::SimDecider { fuel } => {
            w.num(3);
            w.num(*fuel);
        }
    }
    Ok(w.tokens)
}

pub fn encode_tm(m: &MachineTM) -> Result<Word> {
    Ok(tokens_to_word(&encode_tm_tokens(m)?))
}

pub fn encode_itm(m: &MachineITM) -> Result<Word> {
    Ok(tokens_to_word(&encode_itm_tokens(m)?))
}

pub fn encode_machine(m: &Machine) -> Result<Word> {
    match m {
        Machine::Tm(t) => encode_tm(t),
        Machine::Itm(i) => encode_itm(i),
    }
}

fn decode_tokens(tokens: &[u8]) -> Result<Machine> {
    let m = parse_tokens(tokens)?;
    let again = match &m {
        Machine::Tm(t) => encode_tm_tokens(t),
        Machine::Itm(i) => encode_itm_tokens(i),
    }
    .map_err(|e| bad(&e.to_string()))?;
    if again != tokens {
        return Err(bad("not in canonical form"));
    }
    Ok(m)
}

fn parse_tokens(tokens: &[u8]) -> Result<Machine> {
    if tokens.first() != Some(&3) {
        let ops = tokens
            .iter()
            .map(|t| match t {
                0 => Ok(Op::Emit0),
                1 => Ok(Op::Emit1),
                2 => Ok(Op::Copy),
                _ => Err(bad("kind marker inside an op program")),
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Machine::Tm(MachineTM::Table(compile_ops("decoded", &ops).canonicalize())));
    }
    let mut r = Reader { tokens, pos: 1 };
    let m = match r.num()? {
        0 => Machine::Tm(MachineTM::Table(parse_tm_table(&mut r)?)),
        1 => Machine::Itm(MachineITM::Table(parse_itm_table(&mut r)?)),
        2 => match decode_tokens(r.nested()?)? {
            Machine::Itm(d) => Machine::Itm(MachineITM::Diagonal { decider: Box::new(d) }),
            Machine::Tm(_) => return Err(bad("diagonal decider must be inductive")),
        },
        3 => Machine::Itm(MachineITM::SimDecider { fuel: r.num()? }),
        k @ (4 | 5) => match decode_tokens(r.nested()?)? {
            Machine::Tm(t) if k == 4 => Machine::Tm(MachineTM::RangeEnumerator(Box::new(t))),
            Machine::Tm(t) => Machine::Tm(MachineTM::Totalizer(Box::new(t))),
            Machine::Itm(_) => return Err(bad("transformer argument must be a Turing machine")),
        },
        6 => {
            let itm = match decode_tokens(r.nested()?)? {
                Machine::Itm(i) => i,
                Machine::Tm(_) => return Err(bad("reduction argument must be inductive")),
            };
            let n = r.count()?;
            let a = Alphabet::binary();
            let x = (0..n).map(|_| r.index(2).map(|i| a.symbols()[i])).collect::<Result<Vec<_>>>()?;
            Machine::Tm(MachineTM::Reduction { itm: Box::new(itm), x: Word::from_bytes(x) })
        }
        _ => return Err(bad("unknown kind")),
    };
    if r.remaining() != 0 {
        return Err(bad("trailing tokens"));
    }
    Ok(m)
}

fn parse_states(r: &mut Reader) -> Result<(Vec<String>, BTreeSet<usize>)> {
    let n = r.num()?;
    if n == 0 || n > r.remaining() as u64 + 1 {
        return Err(bad("bad state count"));
    }
    let n = n as usize;
    let nf = r.count()?;
    let finals = (0..nf).map(|_| r.index(n)).collect::<Result<BTreeSet<_>>>()?;
    Ok(((0..n).map(|i| format!("q{i}")).collect(), finals))
}

fn parse_tm_table(r: &mut Reader) -> Result<TmTable> {
    let alphabet = read_alphabet(r)?;
    let (states, finals) = parse_states(r)?;
    let k = alphabet.len() + 1;
    let n = states.len();
    let nr = r.count()?;
    let mut rules = BTreeMap::new();
    for _ in 0..nr {
        let q = r.index(n)?;
        let mut read = [0u8; 3];
        for s in &mut read {
            *s = code_sym(&alphabet, r.index(k)?);
        }
        let next = r.index(n)?;
        let w1 = code_sym(&alphabet, r.index(k)?);
        let w2 = code_sym(&alphabet, r.index(k)?);
        let mut moves = [Move::Stay; 3];
        for m in &mut moves {
            *m = code_move(r.index(3)?);
        }
        rules.insert((q, read), TmAction { next, write: [read[0], w1, w2], moves });
    }
    let t = TmTable { name: "decoded".into(), alphabet, states, start: 0, finals, rules };
    t.validate().map_err(|e| bad(&e.to_string()))?;
    Ok(t)
}

fn parse_itm_table(r: &mut Reader) -> Result<ItmTable> {
    let alphabet = read_alphabet(r)?;
    let (states, finals) = parse_states(r)?;
    let k = alphabet.len() + 1;
    let n = states.len();
    let nt = r.count()?;
    let conn_types = (0..nt)
        .map(|_| String::from_utf8(r.bytes()?).map_err(|_| bad("connection type is not text")))
        .collect::<Result<Vec<_>>>()?;
    let nr = r.count()?;
    let mut rules = BTreeMap::new();
    for _ in 0..nr {
        let q = r.index(n)?;
        let s = code_sym(&alphabet, r.index(k)?);
        let (write, conn) = match r.index(3)? {
            0 => (Some(code_sym(&alphabet, r.index(k)?)), None),
            1 => (None, Some(r.index(nt)?)),
            _ => (Some(code_sym(&alphabet, r.index(k)?)), Some(r.index(nt)?)),
        };
        let next = r.index(n)?;
        rules.insert((q, s), ItmRule { write, conn, next });
    }
    let memory = match r.num()? {
        0 => {
            let nc = r.count()?;
            let cells = (0..nc)
                .map(|i| Ok((format!("c{i}"), [Region::Input, Region::Work, Region::Output][r.index(3)?])))
                .collect::<Result<Vec<_>>>()?;
            let nl = r.count()?;
            let links = (0..nl)
                .map(|_| Ok((r.index(nc)?, r.index(nt.max(1))?, r.index(nc)?)))
                .collect::<Result<BTreeSet<_>>>()?;
            MemorySpec::Explicit(ExplicitMemory { cells, links })
        }
        c => MemorySpec::Builtin(BuiltinMemory::from_code(c).ok_or_else(|| bad("unknown memory"))?),
    };
    let t = ItmTable { name: "decoded".into(), alphabet, states, start: 0, finals, conn_types, rules, memory };
    t.validate().map_err(|e| bad(&e.to_string()))?;
    Ok(t)
}

/// Decodes a machine code, rejecting every word outside the codec image.
pub fn decode_machine(code: &Word) -> Result<Machine> {
    decode_tokens(&word_to_tokens(code)?)
}

pub fn decode_tm(code: &Word) -> Result<MachineTM> {
    match decode_machine(code)? {
        Machine::Tm(t) => Ok(t),
        Machine::Itm(_) => Err(bad("code denotes an inductive machine")),
    }
}

pub fn decode_itm(code: &Word) -> Result<MachineITM> {
    match decode_machine(code)? {
        Machine::Itm(m) => Ok(m),
        Machine::Tm(_) => Err(bad("code denotes a Turing machine")),
    }
}
