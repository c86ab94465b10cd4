//! Problem complexity of predicates and predicate sets, plus the detection
//! to construction adapter.

use itm_complexity::complexity::{bounded_set_problem_complexity, problem_complexity_report, Budget, MachineClassHandle};
use itm_complexity::problems::{to_construction, ConstructionTarget, Predicate, PredicateSet, ProblemMode};

fn main() -> itm_complexity::Result<()> {
    let tm = MachineClassHandle::tm();
    let b = Budget::new(10, 5000, 10_000);
    for s in ["anyword", "nonempty", "equals:01", "leq:10", "geq:000", "factor:11", "len:2", "within:6", "false"] {
        let r = problem_complexity_report(&tm, &Predicate::parse(s)?, &b);
        println!("{s:>10}: {} ({} programs, {} halted)", r.verdict(), r.programs_scanned, r.runs_halted);
    }
    let set = PredicateSet::new(vec![Predicate::NonEmpty, Predicate::parse("leq:11")?])?;
    println!("{set}: {}", bounded_set_problem_complexity(&tm, &set, &b));

    for mode in [ProblemMode::Search, ProblemMode::Test] {
        let c = to_construction(&Predicate::NonEmpty, mode);
        println!("{mode:?}: {}", c.statement);
        if let ConstructionTarget::Indicator(t) = c.target {
            println!("  {t}");
        }
    }
    Ok(())
}
