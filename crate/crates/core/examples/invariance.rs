//! Additive constants between universal interpreters.

use itm_complexity::complexity::{invariance_gap, Budget};
use itm_complexity::problems::Predicate;
use itm_complexity::universal::{make_biased_universal, wrap_universal, UniversalInterpreter};
use itm_complexity::Alphabet;

fn main() {
    let b = Budget::new(10, 5000, 10_000);
    let family: Vec<Predicate> = Alphabet::binary().words_up_to(2).map(Predicate::Equals).collect();
    let std = UniversalInterpreter::Standard;
    for other in [std.clone(), wrap_universal(std.clone()), make_biased_universal(3)] {
        let r = invariance_gap(&std, &other, &family, &b);
        println!("{} -> {}: k = {:?}", r.first, r.second, r.k);
        for row in &r.rows {
            println!("  {:>10}  {:?} -> {:?}", row.predicate, row.under_first.value(), row.under_second.value());
        }
    }
}
