//! Observes inductive machines and prints their output histories.

use itm_complexity::itm::itm_run_traced;
use itm_complexity::machines::{alternator, silent, writer, writer_final};
use itm_complexity::Word;

fn main() -> itm_complexity::Result<()> {
    for table in [writer(), alternator(), silent(), writer_final()] {
        let name = table.name.clone();
        let (outcome, history) = itm_run_traced(&table.into(), &Word::empty(), 200)?;
        let changes: Vec<String> = history.changes.iter().take(6).map(|(t, w)| format!("{t}:{w:?}")).collect();
        println!("{name:>12}: {outcome}");
        println!("{:>12}  changes {}", "", changes.join(" "));
    }
    Ok(())
}
