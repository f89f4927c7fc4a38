use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::homology::{bigraded_homology, hat_homology, is_symmetric};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfkGenerator {
    pub name: String,
    pub maslov: Option<i64>,
    pub alexander: Option<i64>,
}

/// `coef * [to; i - n_w, j - n_z]` in the boundary of `[from; i, j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Term {
    pub from: usize,
    pub to: usize,
    pub n_w: u32,
    pub n_z: u32,
    pub coef: i64,
}

/// A based model of CFK-infinity: generators over Z[U, U^-1] with the
/// differential recorded by its U-shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredComplex {
    pub generators: Vec<CfkGenerator>,
    pub terms: Vec<Term>,
}

impl FilteredComplex {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn is_graded(&self) -> bool {
        self.generators.iter().all(|g| g.maslov.is_some() && g.alexander.is_some())
    }

    /// The differential of `name` as `(coef, target, n_w, n_z)`, sorted.
    pub fn boundary_of(&self, name: &str) -> Vec<(i64, String, u32, u32)> {
        let Some(k) = self.index_of(name) else { return Vec::new() };
        let mut out: Vec<_> = self
            .terms
            .iter()
            .filter(|t| t.from == k)
            .map(|t| (t.coef, self.generators[t.to].name.clone(), t.n_w, t.n_z))
            .collect();
        out.sort();
        out
    }

    /// Terms keyed by generator names, for comparing complexes built with
    /// different generator orders.
    pub fn named_terms(&self) -> BTreeMap<(String, String, u32, u32), i64> {
        self.terms
            .iter()
            .map(|t| ((self.generators[t.from].name.clone(), self.generators[t.to].name.clone(), t.n_w, t.n_z), t.coef))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DSquaredWitness {
    pub from: usize,
    pub to: usize,
    pub n_w: u32,
    pub n_z: u32,
    pub coef: i64,
}

/// Check that the differential squares to zero, reporting the first
/// nonzero coefficient of the square.
pub fn verify_d_squared(c: &FilteredComplex) -> Result<(), DSquaredWitness> {
    let mut out: Vec<Vec<&Term>> = vec![Vec::new(); c.generators.len()];
    for t in &c.terms {
        out[t.from].push(t);
    }
    for g in 0..c.generators.len() {
        let mut acc: BTreeMap<(usize, u32, u32), i64> = BTreeMap::new();
        for t1 in &out[g] {
            for t2 in &out[t1.to] {
                *acc.entry((t2.to, t1.n_w + t2.n_w, t1.n_z + t2.n_z)).or_default() += t1.coef * t2.coef;
            }
        }
        if let Some((&(to, n_w, n_z), &coef)) = acc.iter().find(|(_, &v)| v != 0) {
            return Err(DSquaredWitness { from: g, to, n_w, n_z, coef });
        }
    }
    Ok(())
}

/// A complex graded by Maslov degree, with an Alexander value per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pub names: Vec<String>,
    pub maslov: Vec<i64>,
    pub alexander: Vec<i64>,
    /// `(from, to, coef)` on local indices.
    pub diff: Vec<(usize, usize, i64)>,
}

fn graded_view(c: &FilteredComplex, keep_gen: impl Fn(usize) -> bool, keep_term: impl Fn(&Term) -> bool) -> Result<GradedComplex, AlgebraError> {
    let mut local = vec![usize::MAX; c.generators.len()];
    let mut g = GradedComplex { names: Vec::new(), maslov: Vec::new(), alexander: Vec::new(), diff: Vec::new() };
    for (k, gen) in c.generators.iter().enumerate() {
        if keep_gen(k) {
            local[k] = g.names.len();
            g.names.push(gen.name.clone());
            g.maslov.push(gen.maslov.ok_or(AlgebraError::Ungraded)?);
            g.alexander.push(gen.alexander.ok_or(AlgebraError::Ungraded)?);
        }
    }
    for t in &c.terms {
        if keep_term(t) && local[t.from] != usize::MAX && local[t.to] != usize::MAX {
            g.diff.push((local[t.from], local[t.to], t.coef));
        }
    }
    Ok(g)
}

/// The `i = 0` column: all generators, terms with `n_w = 0`.
pub fn hat_complex(c: &FilteredComplex) -> Result<GradedComplex, AlgebraError> {
    graded_view(c, |_| true, |t| t.n_w == 0)
}

/// Associated graded pieces: terms with `n_w = n_z = 0`, split by Alexander
/// grading.
pub fn assoc_graded(c: &FilteredComplex) -> Result<BTreeMap<i64, GradedComplex>, AlgebraError> {
    let mut levels: Vec<i64> = c.generators.iter().map(|g| g.alexander.ok_or(AlgebraError::Ungraded)).collect::<Result<_, _>>()?;
    levels.sort_unstable();
    levels.dedup();
    levels
        .into_iter()
        .map(|a| {
            graded_view(c, |k| c.generators[k].alexander == Some(a), |t| t.n_w == 0 && t.n_z == 0).map(|g| (a, g))
        })
        .collect()
}

/// Filtration level `s` of the hat complex: generators with `A <= s`.
pub fn filtration_sub(c: &FilteredComplex, s: i64) -> Result<GradedComplex, AlgebraError> {
    graded_view(c, |k| c.generators[k].alexander.is_some_and(|a| a <= s), |t| t.n_w == 0)
}

/// Assign absolute gradings.
///
/// Relative gradings are transported along the differential
/// (`M(x) - M(y) = 1 - 2 n_w`, `A(x) - A(y) = n_z - n_w`). Generators the
/// differential does not reach are placed through `fallback`, which returns
/// `(M(g0) - M(g), A(g0) - A(g))` relative to generator 0. Maslov grading is
/// then pinned so hat homology sits in degree 0, and Alexander grading by the
/// unique shift making the homology symmetric.
pub fn normalize_gradings(
    c: &FilteredComplex,
    fallback: Option<&dyn Fn(usize) -> (i64, i64)>,
) -> Result<FilteredComplex, AlgebraError> {
    let n = c.generators.len();
    let mut adj: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); n];
    for t in &c.terms {
        let dm = 1 - 2 * t.n_w as i64;
        let da = t.n_z as i64 - t.n_w as i64;
        adj[t.from].push((t.to, -dm, -da));
        adj[t.to].push((t.from, dm, da));
    }
    let mut grade: Vec<Option<(i64, i64)>> = vec![None; n];
    for root in 0..n {
        if grade[root].is_some() {
            continue;
        }
        grade[root] = Some(if root == 0 {
            (0, 0)
        } else {
            let f = fallback.ok_or_else(|| AlgebraError::GradingUndetermined(c.generators[root].name.clone()))?;
            let (dm, da) = f(root);
            let (m0, a0) = grade[0].expect("root 0 graded first");
            (m0 - dm, a0 - da)
        });
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let (mu, au) = grade[u].unwrap();
            for &(v, dm, da) in &adj[u] {
                if grade[v].is_none() {
                    grade[v] = Some((mu + dm, au + da));
                    queue.push_back(v);
                }
            }
        }
    }
    let grade: Vec<(i64, i64)> = grade.into_iter().map(Option::unwrap).collect();
    for t in &c.terms {
        let (mf, af) = grade[t.from];
        let (mt, at) = grade[t.to];
        if mf - mt != 1 - 2 * t.n_w as i64 || af - at != t.n_z as i64 - t.n_w as i64 {
            return Err(AlgebraError::GradingInconsistent {
                from: c.generators[t.from].name.clone(),
                to: c.generators[t.to].name.clone(),
            });
        }
    }
    let mut out = c.clone();
    for (g, &(m, a)) in out.generators.iter_mut().zip(&grade) {
        g.maslov = Some(m);
        g.alexander = Some(a);
    }
    let hat = hat_homology(&out)?;
    let shift = match hat.iter().collect::<Vec<_>>().as_slice() {
        [(&d, grp)] if grp.rank == 1 && grp.torsion.is_empty() => d,
        _ => {
            let desc: Vec<String> = hat.iter().map(|(d, g)| format!("{g} in degree {d}")).collect();
            return Err(AlgebraError::HatHomologyNotZ(if desc.is_empty() { "0".into() } else { desc.join(" + ") }));
        }
    };
    for g in &mut out.generators {
        g.maslov = g.maslov.map(|m| m - shift);
    }
    let table = bigraded_homology(&out)?;
    let amax = table.keys().map(|k| k.0).max().ok_or(AlgebraError::NoSymmetricShift)?;
    let amin = table.keys().map(|k| k.0).min().unwrap();
    if (amax + amin) % 2 != 0 {
        return Err(AlgebraError::NoSymmetricShift);
    }
    let ashift = -(amax + amin) / 2;
    for g in &mut out.generators {
        g.alexander = g.alexander.map(|a| a + ashift);
    }
    if !is_symmetric(&bigraded_homology(&out)?) {
        return Err(AlgebraError::NoSymmetricShift);
    }
    Ok(out)
}
