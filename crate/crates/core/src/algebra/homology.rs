use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::complex::{assoc_graded, filtration_sub, hat_complex, FilteredComplex, GradedComplex};
use super::snf::{snf, Matrix};
use super::AlgebraError;

/// A finitely generated abelian group: `Z^rank` plus cyclic torsion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl Group {
    pub fn free(rank: usize) -> Self {
        Group { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Nonzero groups keyed by `(A, M)`.
pub type BigradedHomology = BTreeMap<(i64, i64), Group>;

fn block(g: &GradedComplex, idx: &BTreeMap<i64, Vec<usize>>, d: i64) -> Option<Matrix> {
    let src = idx.get(&d)?;
    let dst = idx.get(&(d - 1))?;
    let pos = |list: &Vec<usize>, k: usize| list.binary_search(&k).ok();
    let mut m = Matrix::zeros(dst.len(), src.len());
    for &(from, to, coef) in &g.diff {
        if g.maslov[from] == d {
            if let (Some(j), Some(i)) = (pos(src, from), pos(dst, to)) {
                m[(i, j)] += coef;
            }
        }
    }
    Some(m)
}

fn by_degree(g: &GradedComplex) -> BTreeMap<i64, Vec<usize>> {
    let mut idx: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &m) in g.maslov.iter().enumerate() {
        idx.entry(m).or_default().push(k);
    }
    idx
}

/// Homology of a Maslov-graded complex; zero groups omitted.
pub fn graded_homology(g: &GradedComplex) -> Result<BTreeMap<i64, Group>, AlgebraError> {
    for &(from, to, _) in &g.diff {
        if g.maslov[from] - 1 != g.maslov[to] {
            return Err(AlgebraError::GradingInconsistent { from: g.names[from].clone(), to: g.names[to].clone() });
        }
    }
    let idx = by_degree(g);
    let mut factors: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &d in idx.keys() {
        if let Some(m) = block(g, &idx, d) {
            factors.insert(d, snf(&m)?.invariant_factors());
        }
    }
    let mut out = BTreeMap::new();
    for (&d, gens) in &idx {
        let out_rank = factors.get(&d).map_or(0, Vec::len);
        let incoming = factors.get(&(d + 1));
        let in_rank = incoming.map_or(0, Vec::len);
        let group = Group {
            rank: gens.len() - out_rank - in_rank,
            torsion: incoming.map_or_else(Vec::new, |f| f.iter().copied().filter(|&x| x > 1).collect()),
        };
        if !group.is_zero() {
            out.insert(d, group);
        }
    }
    Ok(out)
}

pub fn hat_homology(c: &FilteredComplex) -> Result<BTreeMap<i64, Group>, AlgebraError> {
    graded_homology(&hat_complex(c)?)
}

/// Knot Floer homology: homology of the associated graded complex.
pub fn bigraded_homology(c: &FilteredComplex) -> Result<BigradedHomology, AlgebraError> {
    let mut out = BTreeMap::new();
    for (a, g) in assoc_graded(c)? {
        for (m, grp) in graded_homology(&g)? {
            out.insert((a, m), grp);
        }
    }
    Ok(out)
}

/// `(A, M)` and `(-A, M - 2A)` carry the same group.
pub(crate) fn is_symmetric(h: &BigradedHomology) -> bool {
    h.iter().all(|(&(a, m), g)| h.get(&(-a, m - 2 * a)) == Some(g))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Least `s` for which the inclusion of filtration level `s` induces a
/// surjection onto hat homology `Z` (in Maslov degree 0).
pub fn tau(c: &FilteredComplex) -> Result<i64, AlgebraError> {
    let hat = hat_complex(c)?;
    let idx = by_degree(&hat);
    let c0 = idx.get(&0).cloned().unwrap_or_default();
    let d0 = block(&hat, &idx, 0).unwrap_or_else(|| Matrix::zeros(0, c0.len()));
    let s0 = snf(&d0)?;
    let r0 = s0.rank();
    let k = c0.len() - r0;
    // coordinates in the cycle basis (columns r0.. of V) of a cycle z: rows r0.. of V^-1 z
    let coords = |z: &[i64]| -> Result<Vec<i64>, AlgebraError> {
        let col = Matrix::from_rows(&z.iter().map(|&v| vec![v]).collect::<Vec<_>>());
        let y = s0.v_inv.mul(&col)?;
        Ok((r0..c0.len()).map(|i| y[(i, 0)]).collect())
    };
    let boundaries = match block(&hat, &idx, 1) {
        Some(d1) => {
            let mut rows = vec![vec![0i64; d1.cols()]; k];
            for j in 0..d1.cols() {
                let z: Vec<i64> = (0..d1.rows()).map(|i| d1[(i, j)]).collect();
                for (i, v) in coords(&z)?.into_iter().enumerate() {
                    rows[i][j] = v;
                }
            }
            Matrix::from_rows(&rows)
        }
        None => Matrix::zeros(k, 0),
    };
    let sb = snf(&boundaries)?;
    let rb = sb.rank();
    if k != rb + 1 || sb.invariant_factors().iter().any(|&f| f != 1) {
        return Err(AlgebraError::HatHomologyNotZ("not Z in degree 0".into()));
    }
    // functional on cycles killing boundaries and onto Z
    let phi: Vec<i64> = if k == 0 { Vec::new() } else { sb.u.row(rb).to_vec() };

    let mut levels: Vec<i64> = hat.alexander.clone();
    levels.sort_unstable();
    levels.dedup();
    for s in levels {
        let sub = filtration_sub(c, s)?;
        let sidx = by_degree(&sub);
        let Some(sub0) = sidx.get(&0) else { continue };
        let m = block(&sub, &sidx, 0).unwrap_or_else(|| Matrix::zeros(0, sub0.len()));
        let ss = snf(&m)?;
        let mut g = 0;
        for j in ss.rank()..sub0.len() {
            // kernel vector, lifted from the subcomplex to all of C_0
            let mut z = vec![0i64; c0.len()];
            for (local, &sk) in sub0.iter().enumerate() {
                let name = &sub.names[sk];
                let pos = c0.iter().position(|&h| hat.names[h] == *name).expect("subcomplex generator");
                z[pos] = ss.v[(local, j)];
            }
            let y = coords(&z)?;
            let val = y.iter().zip(&phi).try_fold(0i64, |acc, (a, b)| a.checked_mul(*b).and_then(|p| p.checked_add(acc)));
            g = gcd(g, val.ok_or(AlgebraError::Overflow)?);
        }
        if g == 1 {
            return Ok(s);
        }
    }
    Err(AlgebraError::HatHomologyNotZ("no filtration level surjects".into()))
}
