//! Structured memories: cells joined by typed connections.
//!
//! A memory is either an explicit finite graph or one of the builtin
//! generators. Builtin memories are infinite and materialize cells on
//! demand; a cell is just a [`Cell`] value and every connection is a pure
//! function of it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    /// Cell of an explicit memory, by declaration index.
    Node(u32),
    /// Cell `pos` of row `row` in the three-row `linear` memory.
    Row { row: u8, pos: i64 },
    /// Cell of the single chain used by `tm3`.
    Chain(i64),
    /// Named singleton cells of `totality` and `limitlist`.
    Special(u8),
    /// Hypercell chain `a_n`.
    Hyper(u64),
    /// Machine-number cells `k_i` of `limitlist`.
    Machine(u64),
    /// Input chain `L_i` of `totality`.
    Input(u64),
}

pub const C0: Cell = Cell::Special(0);
pub const C1: Cell = Cell::Special(1);
pub const OUT: Cell = Cell::Special(2);

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Node(i) => write!(f, "n{i}"),
            Cell::Row { row, pos } => write!(f, "{}{pos}", ["in", "work", "out"][*row as usize]),
            Cell::Chain(k) => write!(f, "k{k}"),
            Cell::Special(0) => write!(f, "c0"),
            Cell::Special(1) => write!(f, "c1"),
            Cell::Special(_) => write!(f, "o"),
            Cell::Hyper(n) => write!(f, "a{n}"),
            Cell::Machine(i) => write!(f, "m{i}"),
            Cell::Input(i) => write!(f, "L{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    Input,
    Work,
    Output,
}

impl Region {
    pub fn keyword(self) -> &'static str {
        match self {
            Region::Input => "input",
            Region::Work => "work",
            Region::Output => "output",
        }
    }

    pub fn parse(s: &str) -> Option<Region> {
        match s {
            "input" => Some(Region::Input),
            "work" => Some(Region::Work),
            "output" => Some(Region::Output),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinMemory {
    /// Rows `in`, `work`, `out`, each a two-way chain; `L`/`R` move along a
    /// row and `U`/`D` switch rows. The head starts at `in0`.
    Linear,
    /// Inputs on a chain `L_i` with `L_i -a-> a_i`; hypercells `a_n` chained
    /// by `t`; `c1 -o-> o` and `a_n -o-> o`. `p` links come from a limit
    /// driver. The head starts at `L_0`.
    Totality,
    /// Output cell `o` (also the start) with `o -t-> a_1`, hypercells chained
    /// by `t`, machine cells `k_i` chained by `n` holding the input, and
    /// `k_i -o-> o`. `p` and `b` links come from a limit driver.
    LimitList,
    /// One chain interleaving three tapes, used to run Turing machines.
    Tm3,
}

impl BuiltinMemory {
    pub const ALL: [BuiltinMemory; 4] = [BuiltinMemory::Linear, BuiltinMemory::Totality, BuiltinMemory::LimitList, BuiltinMemory::Tm3];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinMemory::Linear => "linear",
            BuiltinMemory::Totality => "totality",
            BuiltinMemory::LimitList => "limitlist",
            BuiltinMemory::Tm3 => "tm3",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    /// Connection types the generator provides.
    pub fn conn_types(self) -> &'static [&'static str] {
        match self {
            BuiltinMemory::Linear => &["L", "R", "U", "D"],
            BuiltinMemory::Totality => &["t", "p", "a", "o", "R", "L"],
            BuiltinMemory::LimitList => &["t", "p", "b", "n", "o"],
            BuiltinMemory::Tm3 => &["L", "R"],
        }
    }

    pub fn code(self) -> u64 {
        match self {
            BuiltinMemory::Linear => 1,
            BuiltinMemory::Totality => 2,
            BuiltinMemory::LimitList => 3,
            BuiltinMemory::Tm3 => 4,
        }
    }

    pub fn from_code(c: u64) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.code() == c)
    }

    fn start(self) -> Cell {
        match self {
            BuiltinMemory::Linear => Cell::Row { row: 0, pos: 0 },
            BuiltinMemory::Totality => Cell::Input(0),
            BuiltinMemory::LimitList => OUT,
            BuiltinMemory::Tm3 => Cell::Chain(0),
        }
    }

    fn input_cell(self, i: usize) -> Cell {
        match self {
            BuiltinMemory::Linear => Cell::Row { row: 0, pos: i as i64 },
            BuiltinMemory::Totality => Cell::Input(i as u64),
            BuiltinMemory::LimitList => Cell::Machine(i as u64),
            BuiltinMemory::Tm3 => Cell::Chain(6 * i as i64),
        }
    }

    fn is_output(self, c: Cell) -> bool {
        match (self, c) {
            (BuiltinMemory::Linear, Cell::Row { row, .. }) => row == 2,
            (BuiltinMemory::Tm3, Cell::Chain(k)) => k.rem_euclid(6) == 4,
            (BuiltinMemory::Totality | BuiltinMemory::LimitList, c) => c == OUT,
            _ => false,
        }
    }

    /// Follows the connection named `ty` from `c`.
    fn link(self, c: Cell, ty: &str) -> Option<Cell> {
        use BuiltinMemory::*;
        match (self, ty, c) {
            (Linear, "L", Cell::Row { row, pos }) => Some(Cell::Row { row, pos: pos - 1 }),
            (Linear, "R", Cell::Row { row, pos }) => Some(Cell::Row { row, pos: pos + 1 }),
            (Linear, "U", Cell::Row { row, pos }) if row > 0 => Some(Cell::Row { row: row - 1, pos }),
            (Linear, "D", Cell::Row { row, pos }) if row < 2 => Some(Cell::Row { row: row + 1, pos }),
            (Tm3, "L", Cell::Chain(k)) => Some(Cell::Chain(k - 1)),
            (Tm3, "R", Cell::Chain(k)) => Some(Cell::Chain(k + 1)),
            (Totality, "t", Cell::Special(0)) => Some(Cell::Hyper(0)),
            (Totality, "t", Cell::Hyper(n)) => Some(Cell::Hyper(n + 1)),
            (Totality, "a", Cell::Input(i)) => Some(Cell::Hyper(i)),
            (Totality, "o", Cell::Special(1) | Cell::Hyper(_)) => Some(OUT),
            (Totality, "R", Cell::Input(i)) => Some(Cell::Input(i + 1)),
            (Totality, "L", Cell::Input(i)) if i > 0 => Some(Cell::Input(i - 1)),
            (LimitList, "t", Cell::Special(2)) => Some(Cell::Hyper(1)),
            (LimitList, "t", Cell::Hyper(j)) => Some(Cell::Hyper(j + 1)),
            (LimitList, "n", Cell::Machine(i)) => Some(Cell::Machine(i + 1)),
            (LimitList, "o", Cell::Machine(_)) => Some(OUT),
            _ => None,
        }
    }
}

/// A finite memory listed cell by cell.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExplicitMemory {
    /// Cell names and registers in declaration order. The first cell is
    /// where the head starts.
    pub cells: Vec<(String, Region)>,
    /// `(from, type index, to)` triples.
    pub links: BTreeSet<(usize, usize, usize)>,
}

impl ExplicitMemory {
    pub fn cell_index(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|(n, _)| n == name)
    }

    pub fn validate(&self, type_count: usize) -> Result<()> {
        if self.cells.is_empty() {
            return Err(Error::InvalidMachine("explicit memory has no cells".into()));
        }
        let mut seen = BTreeSet::new();
        for &(from, ty, to) in &self.links {
            if from >= self.cells.len() || to >= self.cells.len() || ty >= type_count {
                return Err(Error::InvalidMachine("link references an unknown cell or type".into()));
            }
            if !seen.insert((from, ty)) {
                return Err(Error::Determinism(format!(
                    "cell {} has two connections of one type",
                    self.cells[from].0
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MemorySpec {
    Explicit(ExplicitMemory),
    Builtin(BuiltinMemory),
}

impl MemorySpec {
    /// Checks that every declared connection type exists in this memory.
    pub fn check_types(&self, types: &[String]) -> Result<()> {
        match self {
            MemorySpec::Explicit(e) => e.validate(types.len()),
            MemorySpec::Builtin(b) => {
                for t in types {
                    if !b.conn_types().contains(&t.as_str()) {
                        return Err(Error::InvalidMachine(format!(
                            "memory builtin:{} has no connection type {t:?}",
                            b.name()
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Links asserted by a limit driver, keyed by cell and connection type.
pub type LinkOverlay = HashMap<(Cell, String), Cell>;

/// A memory bound to one machine's connection-type list, ready to run.
#[derive(Clone, Debug)]
pub(crate) struct Graph {
    base: GraphBase,
    overlay: HashMap<(Cell, usize), Cell>,
}

#[derive(Clone, Debug)]
enum GraphBase {
    Explicit { links: HashMap<(u32, usize), u32>, inputs: Vec<u32>, outputs: BTreeSet<u32> },
    Builtin { memory: BuiltinMemory, types: Vec<String> },
}

impl Graph {
    pub(crate) fn bind(spec: &MemorySpec, types: &[String], overlay: Option<&LinkOverlay>) -> Graph {
        let base = match spec {
            MemorySpec::Explicit(e) => GraphBase::Explicit {
                links: e.links.iter().map(|&(f, t, to)| ((f as u32, t), to as u32)).collect(),
                inputs: (0..e.cells.len() as u32).filter(|&i| e.cells[i as usize].1 == Region::Input).collect(),
                outputs: (0..e.cells.len() as u32).filter(|&i| e.cells[i as usize].1 == Region::Output).collect(),
            },
            MemorySpec::Builtin(b) => GraphBase::Builtin { memory: *b, types: types.to_vec() },
        };
        let mut bound = HashMap::new();
        if let Some(o) = overlay {
            for ((cell, ty), to) in o {
                if let Some(i) = types.iter().position(|t| t == ty) {
                    bound.insert((*cell, i), *to);
                }
            }
        }
        Graph { base, overlay: bound }
    }

    pub(crate) fn start(&self) -> Cell {
        match &self.base {
            GraphBase::Explicit { .. } => Cell::Node(0),
            GraphBase::Builtin { memory, .. } => memory.start(),
        }
    }

    pub(crate) fn link(&self, c: Cell, ty: usize) -> Option<Cell> {
        if let Some(to) = self.overlay.get(&(c, ty)) {
            return Some(*to);
        }
        match (&self.base, c) {
            (GraphBase::Explicit { links, .. }, Cell::Node(i)) => links.get(&(i, ty)).map(|&t| Cell::Node(t)),
            (GraphBase::Explicit { .. }, _) => None,
            (GraphBase::Builtin { memory, types }, c) => memory.link(c, &types[ty]),
        }
    }

    pub(crate) fn input_cell(&self, i: usize) -> Option<Cell> {
        match &self.base {
            GraphBase::Explicit { inputs, .. } => inputs.get(i).map(|&n| Cell::Node(n)),
            GraphBase::Builtin { memory, .. } => Some(memory.input_cell(i)),
        }
    }

    pub(crate) fn is_output(&self, c: Cell) -> bool {
        match (&self.base, c) {
            (GraphBase::Explicit { outputs, .. }, Cell::Node(i)) => outputs.contains(&i),
            (GraphBase::Explicit { .. }, _) => false,
            (GraphBase::Builtin { memory, .. }, c) => memory.is_output(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn types(ts: &[&str]) -> Vec<String> {
        ts.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn linear_rows_connect() {
        let g = Graph::bind(&MemorySpec::Builtin(BuiltinMemory::Linear), &types(&["R", "D", "U"]), None);
        let s = g.start();
        assert_eq!(g.link(s, 0), Some(Cell::Row { row: 0, pos: 1 }));
        assert_eq!(g.link(s, 2), None);
        let out = g.link(g.link(s, 1).unwrap(), 1).unwrap();
        assert!(g.is_output(out));
        assert_eq!(g.link(out, 1), None);
    }

    #[test]
    fn tm3_layout() {
        let g = Graph::bind(&MemorySpec::Builtin(BuiltinMemory::Tm3), &types(&["L", "R"]), None);
        assert_eq!(g.input_cell(2), Some(Cell::Chain(12)));
        assert!(g.is_output(Cell::Chain(-2)));
        assert!(g.is_output(Cell::Chain(10)));
        assert!(!g.is_output(Cell::Chain(5)));
    }

    #[test]
    fn overlay_wins_and_is_typed() {
        let mut o = LinkOverlay::new();
        o.insert((Cell::Hyper(5), "p".into()), C1);
        let g = Graph::bind(&MemorySpec::Builtin(BuiltinMemory::Totality), &types(&["t", "p"]), Some(&o));
        assert_eq!(g.link(Cell::Hyper(5), 1), Some(C1));
        assert_eq!(g.link(Cell::Hyper(4), 1), None);
        assert_eq!(g.link(Cell::Hyper(5), 0), Some(Cell::Hyper(6)));
    }

    #[test]
    fn explicit_memory_rejects_two_links_of_one_type() {
        let m = ExplicitMemory {
            cells: vec![("a".into(), Region::Input), ("b".into(), Region::Output)],
            links: BTreeSet::from([(0, 0, 1), (0, 0, 0)]),
        };
        assert!(matches!(m.validate(1), Err(Error::Determinism(_))));
    }

    #[test]
    fn builtin_type_check() {
        let spec = MemorySpec::Builtin(BuiltinMemory::LimitList);
        assert!(spec.check_types(&types(&["t", "p", "b"])).is_ok());
        assert!(spec.check_types(&types(&["R"])).is_err());
    }
}
