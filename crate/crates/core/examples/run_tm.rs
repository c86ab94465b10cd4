//! Loads the identity machine from its file and runs it under a fuel cap.

use itm_complexity::cli::parse_machine_file;
use itm_complexity::codec::Machine;
use itm_complexity::tm::run_fueled;
use itm_complexity::{Alphabet, Word};

fn main() -> itm_complexity::Result<()> {
    let text = include_str!("../machines/id.tm");
    let Machine::Tm(id) = parse_machine_file(text)? else { unreachable!("id.tm is a Turing machine") };
    let a = Alphabet::binary();
    for x in a.words_up_to(2) {
        let o = run_fueled(&id, &x, 100)?;
        println!("{:>4} -> {:?} in {} steps", x.to_string(), o.output().unwrap(), o.steps());
    }
    // too little fuel is an outcome, not an error
    println!("fuel 2 on 101: {:?}", run_fueled(&id, &Word::from_str_unchecked("101"), 2)?);
    Ok(())
}
