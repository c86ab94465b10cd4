//! Budgeted complexity of every short word under the standard interpreter.

use itm_complexity::complexity::{kolmogorov_table, Budget, MachineClassHandle};

fn main() {
    let b = Budget::new(10, 5000, 10_000);
    for (z, v) in kolmogorov_table(&MachineClassHandle::tm(), 3, &b) {
        println!("C({:>5}) = {v}", format!("{z:?}"));
    }
}
