//! Compares the Turing machine class with the first-order inductive class,
//! and shows a post-processing composition.

use itm_complexity::complexity::{bounded_problem_complexity, compose_postprocess, Budget, MachineClassHandle, K_EMBED};
use itm_complexity::machines::append_zero;
use itm_complexity::problems::Predicate;

fn main() -> itm_complexity::Result<()> {
    let tm = MachineClassHandle::tm();
    let post = compose_postprocess(&tm, append_zero().into());
    let b = Budget::new(8, 5000, 20_000);
    let bi = Budget::new(8 + K_EMBED, 5000, 20_000);
    println!("{:>10} {:>6} {:>6} {:>10}", "predicate", "TM", "ITM1", "TM+append0");
    for s in ["equals:", "equals:0", "equals:10", "equals:00", "nonempty", "len:2", "factor:1"] {
        let p = Predicate::parse(s)?;
        let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        let t = bounded_problem_complexity(&tm, &p, &b).value();
        let i = bounded_problem_complexity(&MachineClassHandle::Itm1, &p, &bi).value();
        let c = bounded_problem_complexity(&post, &p, &b).value();
        println!("{s:>10} {:>6} {:>6} {:>10}", show(t), show(i), show(c));
    }
    Ok(())
}
