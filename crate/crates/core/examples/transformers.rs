//! Totalizer, range enumerator and the reduction of inductive results to
//! totality.

use itm_complexity::codec::encode_tm;
use itm_complexity::hierarchy::{build_range_enumerator, build_totalizer, reduction_check};
use itm_complexity::machines::{alternator, append_zero, const_zero, silent, writer};
use itm_complexity::tm::run_fueled;
use itm_complexity::{Alphabet, Word};

fn main() -> itm_complexity::Result<()> {
    let a = Alphabet::binary();
    let tot = build_totalizer(&encode_tm(&append_zero().into())?)?;
    let range = build_range_enumerator(&encode_tm(&const_zero().into())?)?;
    for n in 0..4 {
        let x = a.word_at(n);
        println!(
            "x_{}: totalizer {:?}  range of C0 {:?}",
            n + 1,
            run_fueled(&tot, &x, 10_000)?.output(),
            run_fueled(&range, &x, 10_000)?.output()
        );
    }
    for t in [alternator(), writer(), silent()] {
        let r = reduction_check(&t.into(), &Word::empty(), 8, 10_000, 10_000)?;
        println!("{:>10}: defined {}, total on probes {}", r.machine, r.itm_defined, r.total_on_probes);
    }
    Ok(())
}
