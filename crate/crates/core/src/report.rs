//! Machine-readable and text reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::invariants::{bounds, Bounds, HfkTable};
use crate::Checks;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfkEntry {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "M")]
    pub m: i64,
    pub rank: usize,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub knot: String,
    pub hfk: Vec<HfkEntry>,
    pub tau: Option<i64>,
    pub genus: i64,
    pub bounds: Option<Bounds>,
    pub checks: Checks,
}

impl RunReport {
    pub fn new(table: &HfkTable, checks: Checks) -> Self {
        RunReport {
            knot: table.name.clone(),
            hfk: table
                .groups
                .iter()
                .map(|(&(a, m), g)| HfkEntry { a, m, rank: g.rank, torsion: g.torsion.clone() })
                .collect(),
            tau: table.tau,
            genus: table.genus,
            bounds: table.tau.map(|t| bounds(t, table.genus)),
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `show_tau` / `show_genus` add those lines; the table is always shown.
    pub fn to_text(&self, table: &HfkTable, show_tau: bool, show_genus: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.knot);
        out.push_str(&table.to_text());
        if show_tau {
            if let Some(t) = self.tau {
                let _ = writeln!(out, "tau = {t}");
            }
        }
        if show_genus {
            let _ = writeln!(out, "genus = {}", self.genus);
        }
        if let Some(b) = &self.bounds {
            let _ = writeln!(out, "bounds: {}", b.to_text());
        }
        let failed: Vec<&String> = self.checks.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k).collect();
        if failed.is_empty() {
            let _ = writeln!(out, "checks: {} passed", self.checks.len());
        } else {
            let _ = writeln!(out, "checks failed: {failed:?}");
        }
        out
    }
}
