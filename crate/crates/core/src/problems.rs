//! Predicates on words, predicate sets, implication edges and the adapter
//! from detection problems to construction problems.
//!
//! Every predicate is total: the two that refer to program runs carry their
//! own finite search bounds.

use std::fmt;

use crate::complexity::FunctionTable;
use crate::error::{Error, Result};
use crate::universal::UniversalInterpreter;
use crate::words::{Alphabet, Word};

/// The kind of problem a predicate poses when asked about a given word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Taxonomy {
    Detection,
    Construction,
    Preservation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    AnyWord,
    NonEmpty,
    Equals(Word),
    /// Shortlex `x ≤ z`.
    Leq(Word),
    Geq(Word),
    Lt(Word),
    /// `x = u z v` for some `u`, `v`.
    ContainsFactor(Word),
    /// `z = p x q` for some `p`, `q`.
    IsFactorOf(Word),
    LengthEquals(usize),
    /// Some program of length at most `n` makes `u` output `x` within `n`
    /// steps.
    ComputedWithin { n: u64, u: UniversalInterpreter },
    /// The budgeted complexity of `x` under `u` is exactly `n`.
    BoundedComplexityEquals { n: usize, u: UniversalInterpreter, max_len: usize, fuel: u64 },
    False,
}

/// Length of the shortest program of length at most `max_len` that makes `u`
/// output `x` within `fuel` steps.
fn shortest_program(u: &UniversalInterpreter, x: &Word, max_len: usize, fuel: u64) -> Option<usize> {
    let a = Alphabet::binary();
    let found = a.words_up_to(max_len).find(|p| u.apply(p, fuel).output() == Some(x));
    found.map(|p| p.len())
}

impl Predicate {
    pub fn eval(&self, x: &Word) -> bool {
        match self {
            Predicate::AnyWord => true,
            Predicate::NonEmpty => !x.is_empty(),
            Predicate::Equals(u) => x == u,
            Predicate::Leq(z) => x <= z,
            Predicate::Geq(z) => x >= z,
            Predicate::Lt(z) => x < z,
            Predicate::ContainsFactor(z) => x.contains_factor(z),
            Predicate::IsFactorOf(z) => z.contains_factor(x),
            Predicate::LengthEquals(n) => x.len() == *n,
            Predicate::ComputedWithin { n, u } => shortest_program(u, x, *n as usize, *n).is_some(),
            Predicate::BoundedComplexityEquals { n, u, max_len, fuel } => {
                *n <= *max_len && shortest_program(u, x, *n, *fuel) == Some(*n)
            }
            Predicate::False => false,
        }
    }

    pub fn taxonomy(&self) -> Taxonomy {
        Taxonomy::Detection
    }

    /// Parses the CLI syntax: `anyword`, `nonempty`, `equals:<w>`,
    /// `leq:<w>`, `geq:<w>`, `lt:<w>`, `factor:<w>`, `infactor:<w>`,
    /// `len:<n>`, `within:<n>`, `false`.
    pub fn parse(s: &str) -> Result<Predicate> {
        let a = Alphabet::binary();
        let bad = |why: &str| Error::InvalidPredicate(format!("{s:?}: {why}"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let word = |arg: Option<&str>| -> Result<Word> {
            let arg = arg.ok_or_else(|| bad("missing word argument"))?;
            a.word(arg).map_err(|e| bad(&e.to_string()))
        };
        let number = |arg: Option<&str>| -> Result<u64> {
            arg.ok_or_else(|| bad("missing number argument"))?.parse().map_err(|_| bad("argument is not a number"))
        };
        let no_arg = |p: Predicate| if arg.is_some() { Err(bad("takes no argument")) } else { Ok(p) };
        match name {
            "anyword" => no_arg(Predicate::AnyWord),
            "nonempty" => no_arg(Predicate::NonEmpty),
            "false" => no_arg(Predicate::False),
            "equals" => Ok(Predicate::Equals(word(arg)?)),
            "leq" => Ok(Predicate::Leq(word(arg)?)),
            "geq" => Ok(Predicate::Geq(word(arg)?)),
            "lt" => Ok(Predicate::Lt(word(arg)?)),
            "factor" => Ok(Predicate::ContainsFactor(word(arg)?)),
            "infactor" => Ok(Predicate::IsFactorOf(word(arg)?)),
            "len" => Ok(Predicate::LengthEquals(number(arg)? as usize)),
            "within" => Ok(Predicate::ComputedWithin { n: number(arg)?, u: UniversalInterpreter::Standard }),
            _ => Err(bad("unknown predicate")),
        }
    }

    /// The condition in words, about the variable `w`.
    pub fn describe(&self) -> String {
        match self {
            Predicate::AnyWord => "w is any word".into(),
            Predicate::NonEmpty => "w is non-empty".into(),
            Predicate::Equals(u) => format!("w = {u}"),
            Predicate::Leq(z) => format!("w <= {z} in shortlex order"),
            Predicate::Geq(z) => format!("w >= {z} in shortlex order"),
            Predicate::Lt(z) => format!("w < {z} in shortlex order"),
            Predicate::ContainsFactor(z) => format!("w contains {z} as a factor"),
            Predicate::IsFactorOf(z) => format!("w is a factor of {z}"),
            Predicate::LengthEquals(n) => format!("w has length {n}"),
            Predicate::ComputedWithin { n, u } => format!("{u} outputs w from a program of length <= {n} within {n} steps"),
            Predicate::BoundedComplexityEquals { n, u, max_len, fuel } => {
                format!("w has complexity {n} under {u} (max_len {max_len}, fuel {fuel})")
            }
            Predicate::False => "false".into(),
        }
    }
}

impl fmt::Display for Predicate {
    /// Writes the CLI syntax where one exists.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::AnyWord => write!(f, "anyword"),
            Predicate::NonEmpty => write!(f, "nonempty"),
            Predicate::Equals(u) => write!(f, "equals:{u}"),
            Predicate::Leq(z) => write!(f, "leq:{z}"),
            Predicate::Geq(z) => write!(f, "geq:{z}"),
            Predicate::Lt(z) => write!(f, "lt:{z}"),
            Predicate::ContainsFactor(z) => write!(f, "factor:{z}"),
            Predicate::IsFactorOf(z) => write!(f, "infactor:{z}"),
            Predicate::LengthEquals(n) => write!(f, "len:{n}"),
            Predicate::ComputedWithin { n, u: UniversalInterpreter::Standard } => write!(f, "within:{n}"),
            Predicate::ComputedWithin { n, u } => write!(f, "within:{n}@{u}"),
            Predicate::BoundedComplexityEquals { n, u, max_len, fuel } => write!(f, "complexity:{n}@{u}/{max_len}/{fuel}"),
            Predicate::False => write!(f, "false"),
        }
    }
}

/// A finite conjunction of predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateSet {
    members: Vec<Predicate>,
}

impl PredicateSet {
    pub fn new(members: Vec<Predicate>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidPredicate("a predicate set needs at least one member".into()));
        }
        Ok(PredicateSet { members })
    }

    pub fn members(&self) -> &[Predicate] {
        &self.members
    }

    pub fn eval(&self, w: &Word) -> bool {
        self.members.iter().all(|p| p.eval(w))
    }
}

impl fmt::Display for PredicateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl From<Predicate> for PredicateSet {
    fn from(p: Predicate) -> Self {
        PredicateSet { members: vec![p] }
    }
}

pub fn eval_set(s: &PredicateSet, w: &Word) -> bool {
    s.eval(w)
}

/// The first word of length at most `max_len`, in shortlex order, on which
/// `p` holds and `q` fails.
pub fn implication_counterexample(p: &Predicate, q: &Predicate, max_len: usize) -> Option<Word> {
    Alphabet::binary().words_up_to(max_len).find(|w| p.eval(w) && !q.eval(w))
}

/// Whether `p(w) ⇒ q(w)` for every word of length at most `max_len`.
pub fn check_implication(p: &Predicate, q: &Predicate, max_len: usize) -> bool {
    implication_counterexample(p, q, max_len).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub premise: Predicate,
    pub conclusion: Predicate,
    pub justification: String,
}

/// Implication edges, each verified exhaustively when registered.
#[derive(Clone, Debug, Default)]
pub struct ImplicationRegistry {
    edges: Vec<Implication>,
}

/// Word length up to which edges are checked on registration.
pub const REGISTRATION_CHECK_LEN: usize = 6;

impl ImplicationRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edges(&self) -> &[Implication] {
        &self.edges
    }

    pub fn register(&mut self, premise: Predicate, conclusion: Predicate, justification: &str) -> Result<()> {
        if let Some(w) = implication_counterexample(&premise, &conclusion, REGISTRATION_CHECK_LEN) {
            return Err(Error::ImplicationViolation {
                premise: premise.to_string(),
                conclusion: conclusion.to_string(),
                counterexample: w.to_string(),
            });
        }
        self.edges.push(Implication { premise, conclusion, justification: justification.into() });
        Ok(())
    }

    /// The shipped registry.
    pub fn standard() -> Self {
        use Predicate::*;
        let w = |s: &str| Word::from_str_unchecked(s);
        let within = |n| ComputedWithin { n, u: UniversalInterpreter::Standard };
        let edges: Vec<(Predicate, Predicate, &str)> = vec![
            (Equals(w("01")), ContainsFactor(w("0")), "01 contains 0"),
            (Equals(w("01")), ContainsFactor(w("01")), "a word is its own factor"),
            (Equals(w("0")), NonEmpty, "0 is non-empty"),
            (Equals(w("")), AnyWord, "everything implies the trivial predicate"),
            (Equals(w("10")), Leq(w("10")), "equality implies the non-strict order"),
            (Equals(w("10")), Geq(w("10")), "equality implies the non-strict order"),
            (Equals(w("110")), LengthEquals(3), "110 has length 3"),
            (Equals(w("1")), IsFactorOf(w("0110")), "1 occurs in 0110"),
            (Equals(w("11")), Geq(w("0")), "11 comes after 0"),
            (Lt(w("10")), Leq(w("10")), "strict implies non-strict"),
            (Lt(w("11")), Leq(w("11")), "strict implies non-strict"),
            (Lt(w("1")), Lt(w("00")), "1 precedes 00"),
            (Leq(w("1")), Leq(w("11")), "1 precedes 11"),
            (Leq(w("01")), Lt(w("10")), "01 precedes 10"),
            (Geq(w("11")), Geq(w("00")), "00 precedes 11"),
            (Geq(w("000")), NonEmpty, "words after 000 are non-empty"),
            (Geq(w("0")), NonEmpty, "only the empty word precedes 0"),
            (NonEmpty, Geq(w("0")), "0 is the least non-empty word"),
            (ContainsFactor(w("01")), ContainsFactor(w("0")), "a factor of a factor"),
            (ContainsFactor(w("01")), ContainsFactor(w("1")), "a factor of a factor"),
            (ContainsFactor(w("1")), NonEmpty, "a word with a factor 1 is non-empty"),
            (ContainsFactor(w("00")), Geq(w("00")), "such words have length at least 2"),
            (IsFactorOf(w("01")), IsFactorOf(w("101")), "01 occurs in 101"),
            (IsFactorOf(w("1")), Leq(w("1")), "factors of 1 are ε and 1"),
            (IsFactorOf(w("0110")), Leq(w("0110")), "a factor is never longer"),
            (LengthEquals(2), NonEmpty, "length 2 is non-empty"),
            (LengthEquals(2), Leq(w("11")), "11 is the last word of length 2"),
            (LengthEquals(3), Geq(w("000")), "000 is the first word of length 3"),
            (LengthEquals(0), Equals(w("")), "ε is the only word of length 0"),
            (False, Equals(w("0")), "false implies everything"),
            (False, LengthEquals(4), "false implies everything"),
            (False, False, "reflexivity"),
            (NonEmpty, AnyWord, "everything implies the trivial predicate"),
            (within(3), within(4), "a longer program bound and more steps"),
            (within(4), AnyWord, "everything implies the trivial predicate"),
        ];
        let mut r = ImplicationRegistry::new();
        for (p, q, why) in edges {
            r.register(p, q, why).expect("shipped edges hold");
        }
        r
    }
}

/// How a construction problem is obtained from a predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemMode {
    /// Find some word satisfying the predicate.
    Search,
    /// Choose a word satisfying the predicate from a domain.
    Selection,
    /// Decide the predicate: compute its indicator function.
    Test,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionTarget {
    /// Any word satisfying the predicate.
    Witness(Predicate),
    /// The indicator function over a finite probe domain, `1` for true.
    Indicator(FunctionTable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionProblem {
    pub mode: ProblemMode,
    pub statement: String,
    pub target: ConstructionTarget,
}

/// Probe domain used by [`to_construction`]: all words of length at most 2.
pub const DEFAULT_PROBE_LEN: usize = 2;

/// Restates the detection problem for `p` as a construction problem.
pub fn to_construction(p: &Predicate, mode: ProblemMode) -> ConstructionProblem {
    to_construction_over(p, mode, DEFAULT_PROBE_LEN)
}

pub fn to_construction_over(p: &Predicate, mode: ProblemMode, probe_len: usize) -> ConstructionProblem {
    match mode {
        ProblemMode::Search | ProblemMode::Selection => ConstructionProblem {
            mode,
            statement: format!("compute a word w with {}", p.describe()),
            target: ConstructionTarget::Witness(p.clone()),
        },
        ProblemMode::Test => {
            let pairs = Alphabet::binary()
                .words_up_to(probe_len)
                .map(|x| {
                    let v = Word::from_str_unchecked(if p.eval(&x) { "1" } else { "0" });
                    (x, v)
                })
                .collect();
            ConstructionProblem {
                mode,
                statement: format!("compute the indicator of \"{}\" on words of length <= {probe_len}", p.describe()),
                target: ConstructionTarget::Indicator(FunctionTable::new(pairs).expect("distinct probe words")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn builtin_examples() {
        assert!(Predicate::ContainsFactor(w("01")).eval(&w("101")));
        assert!(!Predicate::ContainsFactor(w("01")).eval(&w("110")));
        assert!(Predicate::Leq(w("10")).eval(&w("1")));
        assert!(Alphabet::binary().words_up_to(6).all(|x| !Predicate::False.eval(&x)));
        assert!(Predicate::IsFactorOf(w("0110")).eval(&w("11")));
        assert!(Predicate::LengthEquals(2).eval(&w("01")));
    }

    #[test]
    fn run_bounded_predicates() {
        // "01" = pair(ε, ε) runs the empty op machine, which outputs ε at once
        assert!(Predicate::ComputedWithin { n: 2, u: UniversalInterpreter::Standard }.eval(&w("")));
        assert!(!Predicate::ComputedWithin { n: 1, u: UniversalInterpreter::Standard }.eval(&w("")));
        let k = |n| Predicate::BoundedComplexityEquals { n, u: UniversalInterpreter::Standard, max_len: 8, fuel: 100 };
        assert!(k(2).eval(&w("")));
        assert!(!k(3).eval(&w("")));
        assert!(k(6).eval(&w("0")));
    }

    #[test]
    fn sets() {
        let s = PredicateSet::new(vec![Predicate::NonEmpty, Predicate::Leq(w("11"))]).unwrap();
        assert!(s.eval(&w("0")));
        assert!(!PredicateSet::from(Predicate::NonEmpty).eval(&w("")));
        assert!(eval_set(&Predicate::AnyWord.into(), &w("0101")));
        assert!(PredicateSet::new(vec![]).is_err());
    }

    #[test]
    fn implications() {
        assert!(check_implication(&Predicate::Equals(w("01")), &Predicate::ContainsFactor(w("0")), 6));
        let mut r = ImplicationRegistry::new();
        match r.register(Predicate::NonEmpty, Predicate::Equals(w("0")), "wrong") {
            Err(Error::ImplicationViolation { counterexample, .. }) => assert_eq!(counterexample, "1"),
            other => panic!("expected a violation, got {other:?}"),
        }
        assert!(r.edges().is_empty());
    }

    #[test]
    fn shipped_registry_survives_longer_words() {
        let r = ImplicationRegistry::standard();
        assert!(r.edges().len() >= 30);
        for e in r.edges() {
            assert!(check_implication(&e.premise, &e.conclusion, 9), "{} => {}", e.premise, e.conclusion);
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["anyword", "nonempty", "equals:01", "leq:10", "geq:", "lt:1", "factor:01", "infactor:0110", "len:3", "within:4", "false"] {
            assert_eq!(Predicate::parse(s).unwrap().to_string(), s);
        }
        assert!(Predicate::parse("equals:2").is_err());
        assert!(Predicate::parse("bogus").is_err());
        assert!(Predicate::parse("nonempty:1").is_err());
    }

    #[test]
    fn construction_adapter() {
        let c = to_construction(&Predicate::Equals(w("01")), ProblemMode::Search);
        assert_eq!(c.statement, "compute a word w with w = 01");
        let c = to_construction(&Predicate::NonEmpty, ProblemMode::Test);
        let ConstructionTarget::Indicator(t) = c.target else { panic!("indicator expected") };
        assert_eq!(t.pairs()[..3], [(w(""), w("0")), (w("0"), w("1")), (w("1"), w("1"))]);
        let c = to_construction_over(&Predicate::ContainsFactor(w("1")), ProblemMode::Test, 1);
        let ConstructionTarget::Indicator(t) = c.target else { panic!("indicator expected") };
        let values: Vec<Word> = t.pairs().iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(values, vec![w("0"), w("0"), w("1")]);
    }
}
