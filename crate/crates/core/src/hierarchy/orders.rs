//! Strict inductive orders of the classical problems.
//!
//! The table is static data. The citation strings name where each value is
//! established in the source literature.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderRow {
    pub problem: String,
    /// The order, or `n+1` for the parametric row.
    pub order: String,
    pub citation: &'static str,
    pub description: &'static str,
}

const ROWS: [(&str, &str, &str, &str); 7] = [
    ("HP", "1", "Thm 8.1", "does T halt on x"),
    ("AP", "1", "Cor 8.1", "does T give a result on x"),
    ("TP", "2", "Thm 8.6", "is T total"),
    ("IfP", "2", "Thm 8.7", "is the range of T infinite"),
    ("EmP", "1", "Thm 8.8", "is the domain of T empty"),
    ("LEmP", "1", "Cor 8.3", "is the language of T empty"),
    ("RPI_n", "n+1", "Thm 8.2", "does an order-n inductive machine give a result on x"),
];

pub fn order_table() -> Vec<OrderRow> {
    ROWS.iter()
        .map(|&(p, o, c, d)| OrderRow { problem: p.into(), order: o.into(), citation: c, description: d })
        .collect()
}

/// Looks up a row. `RPI_<k>` for a concrete `k` resolves the parametric row.
pub fn order_lookup(name: &str) -> Result<OrderRow> {
    let table = order_table();
    if let Some(row) = table.iter().find(|r| r.problem.eq_ignore_ascii_case(name)) {
        return Ok(row.clone());
    }
    if let Some(k) = name.strip_prefix("RPI_").and_then(|k| k.parse::<u64>().ok()) {
        let base = table.into_iter().find(|r| r.problem == "RPI_n").expect("parametric row");
        return Ok(OrderRow { problem: name.into(), order: (k + 1).to_string(), ..base });
    }
    Err(Error::UnknownProblem(name.into()))
}

/// Upper bound on the inductive order of a problem reducible by an order-`n`
/// machine to a problem of order `m`.
pub fn composition_bound(m: u64, n: u64) -> u64 {
    m + n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(order_lookup("HP").unwrap().order, "1");
        assert_eq!(order_lookup("TP").unwrap().order, "2");
        let r = order_lookup("RPI_3").unwrap();
        assert_eq!((r.order.as_str(), r.citation), ("4", "Thm 8.2"));
        assert!(order_lookup("XYZ").is_err());
        assert_eq!(composition_bound(2, 1), 3);
    }
}
