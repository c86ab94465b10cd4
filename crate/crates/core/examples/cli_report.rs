//! Drives the command-line front end in-process and prints its JSON report.

fn main() {
    let args = ["itmc", "--json", "complexity", "--predicate", "equals:01", "--max-len", "10", "--fuel", "5000"];
    let mut out = Vec::new();
    let code = itm_complexity::cli::dispatch(args, &mut out, &mut std::io::stderr());
    let doc: serde_json::Value = serde_json::from_slice(&out).expect("json report");
    println!("exit {code}");
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
}
