//! Halting, emptiness and totality verdicts for the six-machine pool.

use itm_complexity::codec::encode_tm;
use itm_complexity::hierarchy::{emptiness_solver, halting_itm, totality_verdict};
use itm_complexity::machines::standard_pool;
use itm_complexity::Alphabet;

fn main() -> itm_complexity::Result<()> {
    let pool = standard_pool();
    let codes: Vec<_> = pool.iter().map(|m| encode_tm(&m.machine)).collect::<Result<_, _>>()?;
    let inputs: Vec<_> = Alphabet::binary().words_up_to(2).collect();
    for (i, m) in pool.iter().enumerate() {
        let halts: String = inputs
            .iter()
            .map(|x| halting_itm(&codes[i], x, 1000).map(|v| if v.value.is_some_and(|w| w.to_string() == "1") { 'H' } else { '.' }))
            .collect::<Result<_, _>>()?;
        let empty = emptiness_solver(&codes[i], 32)?;
        let total = totality_verdict(&codes, i, 64)?;
        println!(
            "{:>20}  halts {halts}  empty {:?} (since {:?})  total {:?} (since cycle {:?})",
            m.machine.name(),
            empty.value.unwrap(),
            empty.stabilized_since.unwrap(),
            total.value.unwrap(),
            total.stabilized_since.unwrap()
        );
    }
    Ok(())
}
