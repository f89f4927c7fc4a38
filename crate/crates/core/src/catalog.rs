//! Reference data: the 10_161 complex, the ten-crossing table, and small
//! built-in diagrams.

use std::collections::BTreeMap;

use crate::algebra::{CfkGenerator, FilteredComplex, Group, Term};
use crate::diagram::{Basepoint, DiagramDescription, Endpoint};
use crate::invariants::{complete_by_symmetry, euler_poly, HfkTable};
use crate::pretzel;

/// Filtration offsets `[x_k; i + f, i + s]` of the 13 generators.
const OFFSETS_10_161: [(i64, i64); 13] = [
    (0, 0),
    (-1, 1),
    (-1, 0),
    (0, -2),
    (1, -2),
    (0, 0),
    (0, 1),
    (1, 0),
    (0, 0),
    (-2, 1),
    (-2, 0),
    (0, -1),
    (1, -1),
];

/// `(from, to, coef)`, 1-based.
const BOUNDARY_10_161: [(usize, usize, i64); 18] = [
    (1, 4, 1),
    (1, 11, -1),
    (2, 3, 1),
    (5, 4, -1),
    (6, 4, 1),
    (6, 3, -1),
    (7, 1, 1),
    (7, 2, -1),
    (7, 6, -1),
    (7, 10, 1),
    (8, 9, 1),
    (8, 13, 1),
    (8, 1, -1),
    (8, 5, -1),
    (9, 12, 1),
    (9, 11, -1),
    (10, 11, 1),
    (13, 12, -1),
];

/// The 13-generator complex of 10_161, with U-shifts read off the offsets.
pub fn fixture_10_161() -> FilteredComplex {
    let generators = OFFSETS_10_161
        .iter()
        .enumerate()
        .map(|(k, &(f, s))| CfkGenerator { name: format!("x{}", k + 1), maslov: None, alexander: Some(s - f) })
        .collect();
    let terms = BOUNDARY_10_161
        .iter()
        .map(|&(a, b, coef)| {
            let (fa, sa) = OFFSETS_10_161[a - 1];
            let (fb, sb) = OFFSETS_10_161[b - 1];
            Term { from: a - 1, to: b - 1, n_w: (fa - fb) as u32, n_z: (sa - sb) as u32, coef }
        })
        .collect();
    FilteredComplex { generators, terms }
}

/// One row of the ten-crossing table: `tau` and, for each `i >= 0`, the
/// groups as `(M, rank)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub tau: i64,
    pub entries: &'static [&'static [(i64, usize)]],
}

impl TableRow {
    /// Groups for `A >= 0` as listed.
    pub fn listed(&self) -> BTreeMap<(i64, i64), Group> {
        let mut out = BTreeMap::new();
        for (i, list) in self.entries.iter().enumerate() {
            for &(m, r) in list.iter() {
                out.insert((i as i64, m), Group::free(r));
            }
        }
        out
    }

    /// The full table, negative Alexander gradings filled in by symmetry.
    /// Symmetry is not checked here.
    pub fn table(&self) -> HfkTable {
        let groups = complete_by_symmetry(&self.listed());
        let genus = groups.keys().map(|k| k.0).max().unwrap_or(0);
        let euler = euler_poly(&groups);
        HfkTable { name: self.name.to_string(), groups, tau: Some(self.tau), genus, euler }
    }
}

macro_rules! row {
    ($name:expr, $aliases:expr, $tau:expr, [$($e:expr),* $(,)?]) => {
        TableRow { name: $name, aliases: $aliases, tau: $tau, entries: &[$(&$e),*] }
    };
}

pub const TABLE1: [TableRow; 18] = [
    row!("10_124", &[], 4, [[(-3, 1)], [(-2, 1)], [], [(-1, 1)], [(0, 1)]]),
    row!("10_125", &[], 1, [[(-1, 1)], [(0, 2)], [(1, 2)], [(2, 1)]]),
    row!("10_126", &[], -1, [[(1, 5)], [(2, 4)], [(3, 2)], [(4, 1)]]),
    row!("10_127", &[], -2, [[(2, 7)], [(3, 6)], [(4, 4)], [(5, 1)]]),
    row!("10_128", &[], 3, [[(-2, 1)], [(-2, 1)], [(-1, 3)], [(0, 2)]]),
    row!("10_129", &[], 0, [[(0, 9)], [(1, 6)], [(2, 2)]]),
    row!("10_130", &[], 0, [[(0, 5)], [(1, 4)], [(2, 2)]]),
    row!("10_131", &[], -1, [[(1, 11)], [(2, 8)], [(3, 2)]]),
    row!("10_132", &[], -1, [[(0, 2), (1, 1)], [(1, 2), (2, 1)], [(2, 1)]]),
    row!("10_133", &[], -1, [[(1, 7)], [(2, 5)], [(3, 1)]]),
    row!("10_134", &[], 3, [[(-3, 3)], [(-2, 4)], [(-1, 4)], [(0, 2)]]),
    row!("10_135", &[], 0, [[(0, 13)], [(1, 9)], [(2, 3)]]),
    row!("10_136", &[], 0, [[(-1, 6), (0, 1)], [(0, 4)], [(1, 1)]]),
    row!("10_137", &[], 0, [[(0, 11)], [(1, 6)], [(2, 1)]]),
    row!("10_138", &[], 1, [[(-1, 7)], [(0, 8)], [(1, 5)], [(2, 1)]]),
    row!("10_139", &[], 4, [[(-3, 3)], [(-2, 2)], [], [(-1, 1)], [(0, 1)]]),
    row!("10_145", &[], -2, [[(1, 4), (2, 1)], [(2, 2), (3, 1)], [(4, 1)]]),
    row!("10_161", &["10_162"], -3, [[(2, 3)], [(3, 2)], [(4, 1), (5, 1)], [(6, 1)]]),
];

pub fn table1() -> &'static [TableRow] {
    &TABLE1
}

pub fn table_row(name: &str) -> Option<&'static TableRow> {
    TABLE1.iter().find(|r| r.name == name || r.aliases.contains(&name))
}

fn unknot() -> DiagramDescription {
    DiagramDescription {
        n: 1,
        arcs: vec![[Endpoint::bottom(0), Endpoint::top(0)]],
        w: Basepoint::below(0),
        z: Basepoint::above(0),
        name: Some("unknot".into()),
    }
}

/// The unknot with one finger of `beta` pushed across `alpha`.
fn unknot_finger() -> DiagramDescription {
    DiagramDescription {
        n: 3,
        arcs: vec![
            [Endpoint::bottom(0), Endpoint::bottom(1)],
            [Endpoint::top(1), Endpoint::top(2)],
            [Endpoint::bottom(2), Endpoint::top(0)],
        ],
        w: Basepoint::above(2),
        z: Basepoint::below(2),
        name: Some("unknot-finger".into()),
    }
}

pub fn builtin_diagrams() -> BTreeMap<String, DiagramDescription> {
    let mut out = BTreeMap::new();
    out.insert("unknot".to_string(), unknot());
    out.insert("unknot-finger".to_string(), unknot_finger());
    for (m, n) in [(5, 5), (7, 5), (7, 7), (9, 5)] {
        let d = pretzel::build_diagram(m, n).expect("valid parameters");
        out.insert(format!("pretzel-{m}-{n}"), d);
    }
    out
}

/// Anything the catalog can show or export.
#[derive(Clone, Debug)]
pub enum Fixture {
    Complex(FilteredComplex),
    TableRow(&'static TableRow),
    Diagram(DiagramDescription),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub fixture: Fixture,
}

impl CatalogEntry {
    pub fn kind(&self) -> &'static str {
        match self.fixture {
            Fixture::Complex(_) => "complex",
            Fixture::TableRow(_) => "table-row",
            Fixture::Diagram(_) => "diagram",
        }
    }
}

/// Every fixture, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![CatalogEntry { name: "10_161-complex".into(), fixture: Fixture::Complex(fixture_10_161()) }];
    out.extend(TABLE1.iter().map(|r| CatalogEntry { name: r.name.to_string(), fixture: Fixture::TableRow(r) }));
    out.extend(builtin_diagrams().into_iter().map(|(name, d)| CatalogEntry { name, fixture: Fixture::Diagram(d) }));
    out
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    if let Some(r) = table_row(name) {
        return Some(CatalogEntry { name: r.name.to_string(), fixture: Fixture::TableRow(r) });
    }
    entries().into_iter().find(|e| e.name == name)
}
