//! The halting solver that reads answers off links grown by a limit
//! process, shown at growing budgets.

use itm_complexity::hierarchy::solvers::limit_halting_verdict;
use itm_complexity::machines::{halts_on_x3_only, identity, never};
use itm_complexity::tm::MachineTM;
use itm_complexity::Word;

fn main() -> itm_complexity::Result<()> {
    let pool: Vec<(MachineTM, Word)> = vec![
        (identity().into(), Word::from_str_unchecked("01")),
        (never().into(), Word::empty()),
        (halts_on_x3_only().into(), Word::from_str_unchecked("1")),
    ];
    for budget in [0, 1, 4, 16] {
        let answers: Vec<String> = (0..pool.len())
            .map(|n| limit_halting_verdict(pool.clone(), n, budget).map(|o| format!("{:?}", o.result().cloned().unwrap_or_default())))
            .collect::<Result<_, _>>()?;
        println!("budget {budget:>2}: {}", answers.join(" "));
    }
    Ok(())
}
