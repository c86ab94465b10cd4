//! Alphabets, words, the shortlex enumeration and the pairing code.
//!
//! Every machine in the crate computes over finite words. Words are stored
//! as raw ASCII bytes; the [`Alphabet`] that owns them fixes the symbol
//! order used by shortlex comparison and indexing. The blank symbol `_` is
//! reserved for tapes and memory cells and never occurs inside a word.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The reserved blank symbol.
pub const BLANK: u8 = b'_';

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    pub fn new(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols".into()));
        }
        for (i, &s) in symbols.iter().enumerate() {
            if s == BLANK {
                return Err(Error::InvalidAlphabet("blank `_` is reserved".into()));
            }
            if !s.is_ascii_graphic() {
                return Err(Error::InvalidAlphabet(format!("symbol {s:#x} is not printable")));
            }
            if symbols[..i].contains(&s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {:?}", s as char)));
            }
        }
        Ok(Alphabet { symbols: symbols.to_vec() })
    }

    pub fn binary() -> Self {
        Alphabet { symbols: vec![b'0', b'1'] }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: u8) -> bool {
        self.symbols.contains(&s)
    }

    /// Position of `s` in the symbol order.
    pub fn rank(&self, s: u8) -> Option<usize> {
        self.symbols.iter().position(|&x| x == s)
    }

    pub fn validate(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(Error::InvalidWord { word: w.to_string(), symbol: s as char }),
            None => Ok(()),
        }
    }

    pub fn word(&self, s: &str) -> Result<Word> {
        let w = Word(s.as_bytes().to_vec());
        self.validate(&w)?;
        Ok(w)
    }

    /// Shortlex comparison: shorter words first, then symbol order.
    pub fn shortlex_cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.0.iter().zip(&b.0) {
                let o = self.rank(*x).cmp(&self.rank(*y));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Position of `w` in the shortlex enumeration, starting with ε ↦ 0.
    pub fn shortlex_index(&self, w: &Word) -> Result<u64> {
        self.validate(w)?;
        let k = self.len() as u64;
        let overflow = || Error::IndexOverflow(w.len());
        // words shorter than w, then the rank of w among words of its length
        let mut shorter: u64 = 0;
        let mut block: u64 = 1;
        for _ in 0..w.len() {
            shorter = shorter.checked_add(block).ok_or_else(overflow)?;
            block = block.checked_mul(k).ok_or_else(overflow)?;
        }
        let mut rank: u64 = 0;
        for &s in &w.0 {
            let r = self.rank(s).expect("validated") as u64;
            rank = rank.checked_mul(k).and_then(|x| x.checked_add(r)).ok_or_else(overflow)?;
        }
        shorter.checked_add(rank).ok_or_else(overflow)
    }

    /// Inverse of [`Alphabet::shortlex_index`].
    pub fn word_at(&self, mut n: u64) -> Word {
        let k = self.len() as u64;
        if k == 1 {
            return Word(vec![self.symbols[0]; n as usize]);
        }
        let mut len = 0usize;
        let mut block: u64 = 1;
        while n >= block {
            n -= block;
            len += 1;
            block = match block.checked_mul(k) {
                Some(b) => b,
                None => u64::MAX,
            };
        }
        let mut out = vec![self.symbols[0]; len];
        for slot in out.iter_mut().rev() {
            *slot = self.symbols[(n % k) as usize];
            n /= k;
        }
        Word(out)
    }

    /// All words of exactly `len` symbols in shortlex order.
    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.len();
        let total = k.checked_pow(len as u32).expect("length too large to enumerate");
        (0..total).map(move |mut n| {
            let mut out = vec![self.symbols[0]; len];
            for slot in out.iter_mut().rev() {
                *slot = self.symbols[n % k];
                n /= k;
            }
            Word(out)
        })
    }

    /// All words of length at most `max_len` in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |l| self.words_of_len(l))
    }

    /// Self-delimiting encoding: every symbol doubled, then the two-symbol
    /// terminator made of the first and second symbols of the alphabet.
    pub fn self_delimit(&self, u: &Word) -> Result<Word> {
        let (t0, t1) = self.terminator()?;
        self.validate(u)?;
        let mut out = Vec::with_capacity(2 * u.len() + 2);
        for &s in &u.0 {
            out.push(s);
            out.push(s);
        }
        out.push(t0);
        out.push(t1);
        Ok(Word(out))
    }

    /// Splits a self-delimited prefix off `p`, returning `(decoded, rest)`.
    pub fn split_self_delimited(&self, p: &Word) -> Result<(Word, Word)> {
        let (t0, t1) = self.terminator()?;
        let bytes = &p.0;
        let mut decoded = Vec::new();
        let mut i = 0;
        while i + 1 < bytes.len() {
            let (a, b) = (bytes[i], bytes[i + 1]);
            if a == t0 && b == t1 {
                return Ok((Word(decoded), Word(bytes[i + 2..].to_vec())));
            }
            if a != b || !self.contains(a) {
                return Err(Error::MalformedPair(format!("bad block at offset {i} of {p}")));
            }
            decoded.push(a);
            i += 2;
        }
        Err(Error::MalformedPair(format!("no terminator in {p}")))
    }

    /// Length cost of the right component: `l(pair(w, u)) = l(w) + header_cost(u)`.
    pub fn header_cost(u: &Word) -> usize {
        2 * u.len() + 2
    }

    /// `pair(w, u) = sd(u) · w`.
    pub fn pair(&self, w: &Word, u: &Word) -> Result<Word> {
        self.validate(w)?;
        let mut out = self.self_delimit(u)?;
        out.0.extend_from_slice(&w.0);
        Ok(out)
    }

    /// Inverse of [`Alphabet::pair`]: returns `(w, u)`.
    pub fn unpair(&self, p: &Word) -> Result<(Word, Word)> {
        let (u, w) = self.split_self_delimited(p)?;
        self.validate(&w)?;
        Ok((w, u))
    }

    fn terminator(&self) -> Result<(u8, u8)> {
        if self.len() < 2 {
            return Err(Error::InvalidAlphabet("pairing needs at least two symbols".into()));
        }
        Ok((self.symbols[0], self.symbols[1]))
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::binary()
    }
}

/// A finite word. `Ord` is shortlex over raw bytes, which agrees with
/// [`Alphabet::shortlex_cmp`] whenever the alphabet lists its symbols in
/// byte order (true for the binary default).
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", from = "String")]
pub struct Word(pub(crate) Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Unchecked constructor; use [`Alphabet::word`] to validate.
    pub fn from_str_unchecked(s: &str) -> Self {
        Word(s.as_bytes().to_vec())
    }

    pub fn from_bytes(b: Vec<u8>) -> Self {
        Word(b)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    /// True when `z` occurs as a contiguous factor of `self`.
    pub fn contains_factor(&self, z: &Word) -> bool {
        z.is_empty() || self.0.windows(z.len()).any(|w| w == z.0.as_slice())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl From<String> for Word {
    fn from(s: String) -> Word {
        Word(s.into_bytes())
    }
}

/// Shorthand for binary test and example words.
pub fn w(s: &str) -> Word {
    Word::from_str_unchecked(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_small_indices() {
        let a = Alphabet::binary();
        assert_eq!(a.shortlex_index(&w("")).unwrap(), 0);
        assert_eq!(a.shortlex_index(&w("0")).unwrap(), 1);
        assert_eq!(a.shortlex_index(&w("1")).unwrap(), 2);
        assert_eq!(a.shortlex_index(&w("00")).unwrap(), 3);
        assert_eq!(a.word_at(3), w("00"));
    }

    #[test]
    fn shortlex_index_matches_enumeration() {
        let a = Alphabet::binary();
        for (i, word) in a.words_up_to(10).enumerate() {
            assert_eq!(a.shortlex_index(&word).unwrap(), i as u64);
            assert_eq!(a.word_at(i as u64), word);
        }
        let t = Alphabet::new(b"abc").unwrap();
        for (i, word) in t.words_up_to(5).enumerate() {
            assert_eq!(t.shortlex_index(&word).unwrap(), i as u64);
            assert_eq!(t.word_at(i as u64), word);
        }
    }

    #[test]
    fn invalid_symbol_is_rejected() {
        let a = Alphabet::binary();
        assert!(matches!(a.shortlex_index(&w("012")), Err(Error::InvalidWord { symbol: '2', .. })));
        assert!(Alphabet::new(b"0_").is_err());
        assert!(Alphabet::new(b"00").is_err());
        assert!(Alphabet::new(b"").is_err());
    }

    #[test]
    fn pairing_examples() {
        let a = Alphabet::binary();
        assert_eq!(a.pair(&w(""), &w("")).unwrap(), w("01"));
        assert_eq!(Alphabet::header_cost(&w("")), 2);
        assert_eq!(a.pair(&w("1"), &w("0")).unwrap(), w("00011"));
        assert_eq!(Alphabet::header_cost(&w("0")), 4);
        // "00" -> 0, "11" -> 1, "01" terminates; nothing is left for w
        assert_eq!(a.unpair(&w("001101")).unwrap(), (w(""), w("01")));
        assert_eq!(a.unpair(&w("00011")).unwrap(), (w("1"), w("0")));
    }

    #[test]
    fn malformed_pairs() {
        let a = Alphabet::binary();
        assert!(a.unpair(&w("11")).is_err());
        assert!(a.unpair(&w("10")).is_err());
        assert!(a.unpair(&w("0")).is_err());
        assert!(a.unpair(&w("")).is_err());
    }

    #[test]
    fn shortlex_cmp_orders_by_length_first() {
        let a = Alphabet::binary();
        assert_eq!(a.shortlex_cmp(&w("1"), &w("00")), Ordering::Less);
        assert_eq!(a.shortlex_cmp(&w("10"), &w("01")), Ordering::Greater);
        assert!(w("1") < w("00"));
    }
}
