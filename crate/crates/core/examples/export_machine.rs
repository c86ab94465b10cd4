//! Prints a library machine in the machine-file format.
//!
//! ```bash
//! cargo run --example export_machine -- writer > writer.itm
//! ```

use itm_complexity::cli::{load_machine, to_machine_file, BUILTIN_MACHINES};

fn main() {
    let Some(name) = std::env::args().nth(1) else {
        eprintln!("usage: export_machine <{}>", BUILTIN_MACHINES.join("|"));
        std::process::exit(2);
    };
    let machine = load_machine(&format!("builtin:{name}")).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    print!("{}", to_machine_file(&machine).expect("library machines are tables"));
}
