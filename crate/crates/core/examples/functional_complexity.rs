//! Shortest payload-free programs for functions given on a probe domain.

use itm_complexity::complexity::{functional_complexity_report, Budget, FunctionTable, MachineClassHandle};
use itm_complexity::Word;

fn main() {
    let tm = MachineClassHandle::tm();
    let b = Budget::new(10, 2000, 10_000);
    let tables = [
        ("identity", FunctionTable::tabulate(2, |x| x.clone())),
        ("constant ε", FunctionTable::tabulate(2, |_| Word::empty())),
        ("append 0", FunctionTable::tabulate(2, |x| x.concat(&Word::from_str_unchecked("0")))),
    ];
    for (name, t) in &tables {
        let r = functional_complexity_report(&tm, t, &b);
        println!("{name:>10}: {} [{}]", r.verdict(), r.note.unwrap_or_default());
    }
    let clash = vec![(Word::empty(), Word::empty()), (Word::empty(), Word::from_str_unchecked("1"))];
    println!("duplicate probe: {}", FunctionTable::new(clash).unwrap_err());
}
