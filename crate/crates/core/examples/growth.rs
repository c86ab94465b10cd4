//! How the budgeted complexity of "has length n" grows with n.

use itm_complexity::complexity::{growth_profile, Budget, MachineClassHandle};
use itm_complexity::problems::Predicate;

fn main() {
    let tm = MachineClassHandle::tm();
    for max_len in [4, 12] {
        let b = Budget::new(max_len, 5000, 10_000);
        let profile = growth_profile(&tm, |n| Predicate::LengthEquals(n as usize), 0..=6, &b);
        let row: Vec<String> = profile.iter().map(|(n, v)| format!("{n}:{}", v.value().map_or("-".into(), |v| v.to_string()))).collect();
        println!("max_len {max_len:>2}: {}", row.join(" "));
    }
}
