//! Dovetailed enumeration of the non-total machines of the six-machine pool.

use itm_complexity::codec::encode_tm;
use itm_complexity::hierarchy::Dovetailer;
use itm_complexity::machines::standard_pool;

fn main() -> itm_complexity::Result<()> {
    let pool = standard_pool();
    let names: Vec<String> = pool.iter().map(|m| m.machine.name()).collect();
    let mut d = Dovetailer::new(pool.iter().map(|m| m.machine.clone()).collect())?;
    for cycle in 1..=12 {
        let moved = d.step();
        let list: Vec<&str> = d.list().iter().map(|&k| names[k].as_str()).collect();
        let moved: Vec<&str> = moved.iter().map(|&k| names[k].as_str()).collect();
        println!("cycle {cycle:>2}: {:<60} moved {}", list.join(" "), moved.join(" "));
    }
    for _ in 12..64 {
        d.step();
    }
    let snap = d.snapshot();
    println!("after 64 cycles the stable prefix is:");
    for code in &snap.stable_prefix_estimate {
        let i = pool.iter().position(|m| encode_tm(&m.machine).as_ref() == Ok(code)).expect("pool code");
        println!("  {} (total: {})", names[i], pool[i].total);
    }
    Ok(())
}
