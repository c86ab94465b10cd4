//! The order table and the composition bound.

use itm_complexity::hierarchy::{composition_bound, order_lookup, order_table};

fn main() -> itm_complexity::Result<()> {
    for row in order_table() {
        println!("{:>6}  order {:>3}  {:<8} {}", row.problem, row.order, row.citation, row.description);
    }
    println!("RPI_4 resolves to order {}", order_lookup("RPI_4")?.order);
    println!("order-1 reduction to an order-2 problem: at most {}", composition_bound(2, 1));
    Ok(())
}
