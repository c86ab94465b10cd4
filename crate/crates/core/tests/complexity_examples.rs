use itm_complexity::codec::encode_tm;
use itm_complexity::complexity::*;
use itm_complexity::machines::{append_zero, const_empty, identity};
use itm_complexity::problems::{Predicate, PredicateSet};
use itm_complexity::tm::MachineTM;
use itm_complexity::universal::UniversalInterpreter;
use itm_complexity::{Alphabet, Word};

fn w(s: &str) -> Word {
    Word::from_str_unchecked(s)
}

fn budget() -> Budget {
    Budget::new(10, 5000, 10_000)
}

/// `(program, output)` for every program up to length 10, in shortlex order.
fn outputs() -> Vec<(Word, Word)> {
    Alphabet::binary()
        .words_up_to(10)
        .filter_map(|p| UniversalInterpreter::Standard.apply(&p, 5000).output().cloned().map(|o| (p, o)))
        .collect()
}

fn brute(outs: &[(Word, Word)], pred: impl Fn(&Word) -> bool) -> Option<usize> {
    outs.iter().filter(|(_, o)| pred(o)).map(|(p, _)| p.len()).min()
}

#[test]
fn false_never_has_a_witness() {
    for b in [Budget::new(4, 10, 10), budget()] {
        assert!(bounded_problem_complexity(&MachineClassHandle::tm(), &Predicate::False, &b).value().is_none());
    }
}

#[test]
fn sets_behave_as_conjunctions() {
    let tm = MachineClassHandle::tm();
    let any = bounded_set_problem_complexity(&tm, &Predicate::AnyWord.into(), &budget());
    assert_eq!(any, bounded_problem_complexity(&tm, &Predicate::AnyWord, &budget()));
    let s = PredicateSet::new(vec![Predicate::NonEmpty, Predicate::Leq(w("11"))]).unwrap();
    let e0 = PredicateSet::from(Predicate::Equals(w("0")));
    let vs = bounded_set_problem_complexity(&tm, &s, &budget());
    assert!(vs.at_most(&bounded_set_problem_complexity(&tm, &e0, &budget())));
    let with_false = PredicateSet::new(vec![Predicate::NonEmpty, Predicate::False]).unwrap();
    assert!(bounded_set_problem_complexity(&tm, &with_false, &budget()).value().is_none());
}

#[test]
fn identity_table_witness_is_the_delimited_identity_code() {
    let t = FunctionTable::new(["", "0", "1", "00"].iter().map(|x| (w(x), w(x))).collect()).unwrap();
    let v = bounded_functional_complexity(&MachineClassHandle::tm(), &t, &budget());
    let sd = Alphabet::binary().self_delimit(&encode_tm(&identity().into()).unwrap()).unwrap();
    assert_eq!(v, ComplexityVerdict::Finite { value: sd.len(), witness: sd.clone() });
    // no shorter payload-free program computes the table
    for p in Alphabet::binary().words_up_to(sd.len() - 1) {
        let all = t.pairs().iter().all(|(x, fx)| UniversalInterpreter::Standard.apply2(&p, x, 5000).output() == Some(fx));
        assert!(!all, "{p:?}");
    }
    let c = FunctionTable::new(["", "0", "1", "00"].iter().map(|x| (w(x), Word::empty())).collect()).unwrap();
    let vc = bounded_functional_complexity(&MachineClassHandle::tm(), &c, &budget());
    assert!(encode_tm(&const_empty().into()).unwrap().len() < encode_tm(&identity().into()).unwrap().len());
    assert!(vc.at_most(&v));
}

#[test]
fn identity_postprocessing_changes_nothing() {
    let tm = MachineClassHandle::tm();
    let composed = compose_postprocess(&tm, identity().into());
    let b = Budget::new(8, 2000, 100);
    for s in ["equals:", "equals:1", "nonempty", "len:2", "leq:0", "factor:01"] {
        let p = Predicate::parse(s).unwrap();
        assert_eq!(bounded_problem_complexity(&composed, &p, &b), bounded_problem_complexity(&tm, &p, &b), "{s}");
    }
}

#[test]
fn erasing_postprocessor() {
    let tm = MachineClassHandle::tm();
    let erase = compose_postprocess(&tm, MachineTM::from(const_empty()));
    let b = Budget::new(8, 2000, 100);
    let q = bounded_problem_complexity(&erase, &Predicate::Equals(Word::empty()), &b).value().unwrap();
    for s in ["equals:1", "nonempty", "len:2", "factor:01"] {
        let p = bounded_problem_complexity(&tm, &Predicate::parse(s).unwrap(), &b).value().unwrap();
        assert!(q <= p, "{s}");
    }
    let app = compose_postprocess(&tm, append_zero().into());
    assert_eq!(bounded_problem_complexity(&app, &Predicate::Equals(Word::empty()), &b).value(), None);
}

#[test]
fn length_family_matches_brute_force() {
    let outs = outputs();
    let profile = growth_profile(&MachineClassHandle::tm(), |n| Predicate::LengthEquals(n as usize), 0..=6, &budget());
    for (n, v) in profile {
        assert_eq!(v.value(), brute(&outs, |o| o.len() == n as usize), "n = {n}");
    }
}

#[test]
fn leq_is_a_minimum_over_smaller_words() {
    let outs = outputs();
    let k = |y: &Word| brute(&outs, |o| o == y);
    for z in Alphabet::binary().words_up_to(3) {
        let want = Alphabet::binary().words_up_to(3).filter(|y| *y <= z).filter_map(|y| k(&y)).min();
        let got = bounded_problem_complexity(&MachineClassHandle::tm(), &Predicate::Leq(z.clone()), &budget()).value();
        assert_eq!(got, want, "{z:?}");
    }
}

#[test]
fn computed_within_is_nonincreasing() {
    let b = Budget::new(10, 2000, 100);
    let mut last = None;
    for n in 2..=8 {
        let p = Predicate::ComputedWithin { n, u: UniversalInterpreter::Standard };
        let v = bounded_problem_complexity(&MachineClassHandle::tm(), &p, &b);
        if let Some(prev) = &last {
            assert!(v.at_most(prev), "n = {n}");
        }
        last = Some(v);
    }
}

#[test]
fn identical_interpreters_have_no_gap() {
    let fam: Vec<Predicate> = ["equals:0", "nonempty", "len:2", "false"].iter().map(|s| Predicate::parse(s).unwrap()).collect();
    let r = invariance_gap(&UniversalInterpreter::Standard, &UniversalInterpreter::Standard, &fam, &budget());
    assert_eq!(r.k, Some(0));
    assert!(r.warnings.is_empty());
}
