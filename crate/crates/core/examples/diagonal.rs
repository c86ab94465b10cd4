//! Refutes each candidate result decider with its diagonal machine.

use itm_complexity::hierarchy::{candidate_deciders, diagonal_experiment};

fn main() -> itm_complexity::Result<()> {
    for d in candidate_deciders() {
        let r = diagonal_experiment(&d, 10_000)?;
        println!("{} (code length {})", r.decider, r.code_length);
        println!("  decider on the diagonal pair: {}", r.decider_outcome);
        println!("  diagonal machine on its code: {}", r.machine_outcome);
        println!("  refuted: {}", r.contradiction);
    }
    Ok(())
}
