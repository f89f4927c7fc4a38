//! Tables, genus, Euler polynomial and the genus bounds coming from tau.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{BigradedHomology, Group};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("SymmetryViolation: group at (A={a}, M={m}) has no matching group at (A={}, M={})", -a, m - 2 * a)]
    SymmetryViolation { a: i64, m: i64 },
    #[error("NonSymmetricCoefficients: a_{i} differs from a_{}", -i)]
    NonSymmetricCoefficients { i: i64 },
}

/// Knot Floer homology by bigrading, with derived invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfkTable {
    pub name: String,
    /// Nonzero groups keyed by `(A, M)`.
    pub groups: BTreeMap<(i64, i64), Group>,
    pub tau: Option<i64>,
    pub genus: i64,
    /// Euler characteristic coefficients `a_i`.
    pub euler: BTreeMap<i64, i64>,
}

impl HfkTable {
    /// Rank at each Alexander grading, as `(M, group)` lists.
    pub fn by_alexander(&self) -> BTreeMap<i64, Vec<(i64, Group)>> {
        let mut out: BTreeMap<i64, Vec<(i64, Group)>> = BTreeMap::new();
        for (&(a, m), g) in &self.groups {
            out.entry(a).or_default().push((m, g.clone()));
        }
        out
    }

    /// Free ranks only, for comparisons.
    pub fn ranks(&self) -> BTreeMap<(i64, i64), usize> {
        self.groups.iter().map(|(&k, g)| (k, g.rank)).collect()
    }

    pub fn is_free(&self) -> bool {
        self.groups.values().all(|g| g.torsion.is_empty())
    }

    /// `P(1)`.
    pub fn euler_at_one(&self) -> i64 {
        self.euler.values().sum()
    }

    /// One line per Alexander grading from the top, `i=3: Z_(6)` style.
    pub fn to_text(&self) -> String {
        let by_a = self.by_alexander();
        let mut out = String::new();
        let top = self.genus;
        for a in (-top..=top).rev() {
            let entry = match by_a.get(&a) {
                None => "0".to_string(),
                Some(list) => list
                    .iter()
                    .map(|(m, g)| {
                        let mut parts = Vec::new();
                        match g.rank {
                            0 => {}
                            1 => parts.push(format!("Z_({m})")),
                            r => parts.push(format!("Z^{r}_({m})")),
                        }
                        parts.extend(g.torsion.iter().map(|d| format!("(Z/{d})_({m})")));
                        parts.join(" + ")
                    })
                    .collect::<Vec<_>>()
                    .join(" + "),
            };
            let _ = writeln!(out, "i={a}: {entry}");
        }
        out
    }
}

/// Euler characteristic `a_i = sum_M (-1)^M rank(A = i, M)`.
pub fn euler_poly(groups: &BTreeMap<(i64, i64), Group>) -> BTreeMap<i64, i64> {
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for (&(a, m), g) in groups {
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        *out.entry(a).or_default() += sign * g.rank as i64;
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn check_symmetry(groups: &BTreeMap<(i64, i64), Group>) -> Result<(), InvariantsError> {
    for (&(a, m), g) in groups {
        if groups.get(&(-a, m - 2 * a)) != Some(g) {
            return Err(InvariantsError::SymmetryViolation { a, m });
        }
    }
    Ok(())
}

/// Assemble a table from normalized homology.
pub fn hfk_table(h: &BigradedHomology, name: &str, tau: Option<i64>) -> Result<HfkTable, InvariantsError> {
    let groups: BTreeMap<(i64, i64), Group> = h.iter().filter(|(_, g)| !g.is_zero()).map(|(&k, g)| (k, g.clone())).collect();
    check_symmetry(&groups)?;
    let genus = groups.keys().map(|k| k.0).max().unwrap_or(0).max(0);
    let euler = euler_poly(&groups);
    Ok(HfkTable { name: name.to_string(), groups, tau, genus, euler })
}

/// Complete a table given for `A >= 0` by the symmetry
/// `(A, M) -> (-A, M - 2A)`.
pub fn complete_by_symmetry(nonnegative: &BTreeMap<(i64, i64), Group>) -> BTreeMap<(i64, i64), Group> {
    let mut out = nonnegative.clone();
    for (&(a, m), g) in nonnegative {
        if a > 0 {
            out.insert((-a, m - 2 * a), g.clone());
        }
    }
    out
}

/// The inequalities `u >= g4 >= |tau|`, and their collapse when `|tau| = g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub tau: i64,
    pub genus: i64,
    /// Lower bound for the 4-genus.
    pub slice_genus_at_least: i64,
    /// Lower bound for the unknotting number.
    pub unknotting_number_at_least: i64,
    /// Common value of `g`, `g4` and `u` when `|tau| = g`.
    pub determined: Option<i64>,
}

impl Bounds {
    pub fn to_text(&self) -> String {
        let t = self.tau.abs();
        match self.determined {
            Some(g) => format!("u >= g4 >= |tau| = {t} = g, so g4 = u = g = {g}"),
            None => format!("u >= g4 >= |tau| = {t}; g = {}", self.genus),
        }
    }
}

pub fn bounds(tau: i64, genus: i64) -> Bounds {
    let t = tau.abs();
    Bounds {
        tau,
        genus,
        slice_genus_at_least: t,
        unknotting_number_at_least: t,
        determined: (t == genus).then_some(genus),
    }
}

/// Knot Floer homology of an alternating knot of signature zero from its
/// Alexander polynomial: `Z^{|a_i|}` in bigrading `(i, i)`.
pub fn alternating_model(coeffs: &BTreeMap<i64, i64>, name: &str) -> Result<HfkTable, InvariantsError> {
    for (&i, &a) in coeffs {
        if coeffs.get(&-i).copied().unwrap_or(0) != a {
            return Err(InvariantsError::NonSymmetricCoefficients { i });
        }
    }
    let groups: BTreeMap<(i64, i64), Group> =
        coeffs.iter().filter(|(_, &a)| a != 0).map(|(&i, &a)| ((i, i), Group::free(a.unsigned_abs() as usize))).collect();
    let mut t = hfk_table(&groups, name, Some(0))?;
    t.euler = euler_poly(&t.groups);
    Ok(t)
}

/// Symmetric coefficient map from `a_0, a_1, ...`.
pub fn symmetric_coefficients(nonnegative: &[i64]) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (i, &a) in nonnegative.iter().enumerate() {
        out.insert(i as i64, a);
        out.insert(-(i as i64), a);
    }
    out
}
