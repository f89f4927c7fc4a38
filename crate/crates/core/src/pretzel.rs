//! The pretzel knots P(-2, m, n): closed-form homology, the explicit
//! boundary operator, and a genus-1 diagram realizing it.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{CfkGenerator, FilteredComplex, Group, Term};
use crate::diagram::{Basepoint, DiagramDescription, Endpoint};
use crate::invariants::{complete_by_symmetry, hfk_table, HfkTable, InvariantsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PretzelError {
    #[error("BadParams: {0}")]
    BadParams(String),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PretzelParams {
    pub m: i64,
    pub n: i64,
    pub g: i64,
    pub m_prime: i64,
    pub n_prime: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl PretzelParams {
    /// Odd `m >= n >= min_n`.
    pub fn new(m: i64, n: i64, min_n: i64) -> Result<Self, PretzelError> {
        if m % 2 == 0 || n % 2 == 0 {
            return Err(PretzelError::BadParams(format!("m and n must be odd, got m={m}, n={n}")));
        }
        if n < min_n || m < n {
            return Err(PretzelError::BadParams(format!("need m >= n >= {min_n}, got m={m}, n={n}")));
        }
        let g = (m + n) / 2;
        let (gamma, delta) = if g % 2 == 1 { (1 - (g - 1) / 2, (g - 1) / 2) } else { (1 - g / 2, g / 2 - 1) };
        Ok(PretzelParams { m, n, g, m_prime: (m - 3) / 2, n_prime: (n - 3) / 2, gamma, delta })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PretzelGeneratorId {
    /// Exceptional generators `y1..y4`.
    Y(u8),
    /// `x_{p,q}` with `1 <= p <= n-2`, `1 <= q <= m-2`.
    X(i64, i64),
}

impl fmt::Display for PretzelGeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PretzelGeneratorId::Y(k) => write!(f, "y{k}"),
            PretzelGeneratorId::X(p, q) => write!(f, "x{p},{q}"),
        }
    }
}

/// Closed form of the knot Floer homology, with `tau = -g`.
pub fn closed_form(m: i64, n: i64) -> Result<HfkTable, PretzelError> {
    let p = PretzelParams::new(m, n, 3)?;
    let g = p.g;
    let mut half = BTreeMap::new();
    for i in 0..=g {
        let entry = if i == g || i == g - 1 {
            Some((g + i, 1))
        } else if i == g - 2 {
            None
        } else if g - n <= i && i < g - 2 {
            Some((g - 1 + i, g - 2 - i))
        } else {
            Some((g - 1 + i, n - 2))
        };
        if let Some((mm, r)) = entry {
            if r > 0 {
                half.insert((i, mm), Group::free(r as usize));
            }
        }
    }
    Ok(hfk_table(&complete_by_symmetry(&half), &format!("P(-2,{m},{n})"), Some(-g))?)
}

/// Generators with their filtration offsets: `[x; i + f, i + s]`.
pub fn oracle_generators(p: &PretzelParams) -> Vec<(PretzelGeneratorId, (i64, i64))> {
    use PretzelGeneratorId::*;
    let (ga, de, mp, np) = (p.gamma, p.delta, p.m_prime, p.n_prime);
    let mut out = vec![
        (Y(1), (ga - 1, de + 1)),
        (Y(2), (ga - 1, de)),
        (Y(3), (de, ga - 1)),
        (Y(4), (de + 1, ga - 1)),
    ];
    for a in 0..=np {
        for b in 0..=mp {
            out.push((X(2 * a + 1, 2 * b + 1), (ga + a + b + 1, de - a - b)));
        }
        for b in 1..=mp {
            out.push((X(2 * a + 1, 2 * b), (ga + a + b, de - a - b)));
        }
    }
    for a in 1..=np {
        for b in 0..=mp {
            out.push((X(2 * a, 2 * b + 1), (ga + mp + a - b, de - mp - a + b)));
        }
        for b in 1..=mp {
            out.push((X(2 * a, 2 * b), (ga + mp + a - b, de - mp - a + b - 1)));
        }
    }
    out.sort();
    out
}

/// Boundary terms `(from, to, n_w, n_z, sign)` of the explicit differential.
pub fn oracle_terms(p: &PretzelParams) -> Vec<(PretzelGeneratorId, PretzelGeneratorId, u32, u32, i64)> {
    use PretzelGeneratorId::*;
    let (m, n, mp, np) = (p.m, p.n, p.m_prime, p.n_prime);
    let (m2, n2) = (m - 2, n - 2);
    let x = |a: i64, b: i64| X(a, b);
    let mut t = Vec::new();
    let mut add = |a, b, nw, nz, s| t.push((a, b, nw, nz, s));
    // exceptional generators
    add(Y(1), Y(2), 0, 1, 1);
    add(Y(4), Y(3), 1, 0, -1);
    // row 1
    add(x(1, 1), x(2, m2), 0, 1, 1);
    add(x(1, 1), x(1, 2), 0, 1, 1);
    add(x(1, 1), Y(2), 2, 0, -1);
    for l in 1..=mp {
        add(x(1, 2 * l), x(2, m - 2 * l - 1), 0, 1, 1);
    }
    for l in 1..mp {
        add(x(1, 2 * l + 1), x(2, m - 2 * l - 2), 0, 1, 1);
        add(x(1, 2 * l + 1), x(1, 2 * l + 2), 0, 1, 1);
        add(x(1, 2 * l + 1), x(1, 2 * l), 1, 0, -1);
    }
    add(x(1, m2), x(2, 1), 0, 1, 1);
    add(x(1, m2), x(1, m - 3), 1, 0, -1);
    // row n-2
    add(x(n2, 1), x(n2, 2), 0, 1, 1);
    add(x(n2, 1), x(n2 - 1, m2), 1, 0, -1);
    for l in 1..=mp {
        add(x(n2, 2 * l), x(n2 - 1, m - 2 * l - 1), 1, 0, -1);
    }
    for l in 1..mp {
        add(x(n2, 2 * l + 1), x(n2 - 1, m - 2 * l - 2), 1, 0, -1);
        add(x(n2, 2 * l + 1), x(n2, 2 * l), 1, 0, -1);
        add(x(n2, 2 * l + 1), x(n2, 2 * l + 2), 0, 1, 1);
    }
    add(x(n2, m2), x(n2 - 1, 1), 1, 0, -1);
    add(x(n2, m2), x(n2, m - 3), 1, 0, -1);
    add(x(n2, m2), Y(3), 0, 2, 1);
    // even rows
    for k in 1..=np {
        let r = 2 * k;
        add(x(r, 1), x(r, 2), 1, 0, 1);
        for l in 1..mp {
            add(x(r, 2 * l + 1), x(r, 2 * l + 2), 1, 0, 1);
            add(x(r, 2 * l + 1), x(r, 2 * l), 0, 1, -1);
        }
        add(x(r, m2), x(r, m - 3), 0, 1, -1);
    }
    // odd rows strictly between 1 and n-2
    for k in 1..np {
        let r = 2 * k + 1;
        add(x(r, 1), x(r + 1, m2), 0, 1, 1);
        add(x(r, 1), x(r, 2), 0, 1, 1);
        add(x(r, 1), x(r - 1, m2), 1, 0, -1);
        for l in 1..=mp {
            add(x(r, 2 * l), x(r + 1, m - 2 * l - 1), 0, 1, 1);
            add(x(r, 2 * l), x(r - 1, m - 2 * l - 1), 1, 0, -1);
        }
        for l in 1..mp {
            add(x(r, 2 * l + 1), x(r + 1, m - 2 * l - 2), 0, 1, 1);
            add(x(r, 2 * l + 1), x(r, 2 * l + 2), 0, 1, 1);
            add(x(r, 2 * l + 1), x(r - 1, m - 2 * l - 2), 1, 0, -1);
            add(x(r, 2 * l + 1), x(r, 2 * l), 1, 0, -1);
        }
        add(x(r, m2), x(r + 1, 1), 0, 1, 1);
        add(x(r, m2), x(r, m - 3), 1, 0, -1);
        add(x(r, m2), x(r - 1, 1), 1, 0, -1);
    }
    t
}

/// The complex with the explicit differential, Alexander gradings read
/// off the filtration offsets. Requires odd `m >= n >= 5`.
pub fn oracle_complex(m: i64, n: i64) -> Result<FilteredComplex, PretzelError> {
    let p = PretzelParams::new(m, n, 5)?;
    let gens = oracle_generators(&p);
    let index: BTreeMap<PretzelGeneratorId, usize> = gens.iter().enumerate().map(|(k, (id, _))| (*id, k)).collect();
    let generators = gens
        .iter()
        .map(|(id, (f, s))| CfkGenerator { name: id.to_string(), maslov: None, alexander: Some(s - f) })
        .collect();
    let terms = oracle_terms(&p)
        .into_iter()
        .map(|(a, b, n_w, n_z, coef)| Term { from: index[&a], to: index[&b], n_w, n_z, coef })
        .collect();
    Ok(FilteredComplex { generators, terms })
}

/// Generator names of [`build_diagram`]'s output, indexed by residue.
pub fn diagram_generator_names(m: i64, n: i64) -> Result<Vec<String>, PretzelError> {
    PretzelParams::new(m, n, 5)?;
    let mut names = Vec::new();
    let row = |p: i64| (1..=m - 2).rev().map(move |q| PretzelGeneratorId::X(p, q).to_string());
    for p in (2..=n - 3).rev().step_by(2) {
        names.extend(row(p));
    }
    names.push("y2".into());
    names.push("y1".into());
    for p in (1..=n - 2).step_by(2) {
        names.extend(row(p));
    }
    names.push("y4".into());
    names.push("y3".into());
    Ok(names)
}

/// A doubly pointed genus-1 diagram of P(-2, m, n), from the standard
/// two-rainbow family: `a` nested caps on each side, `m` through arcs with a
/// twist of 4, `w` at the centre of the top rainbow and `z` at the centre of
/// the bottom one.
pub fn build_diagram(m: i64, n: i64) -> Result<DiagramDescription, PretzelError> {
    PretzelParams::new(m, n, 5)?;
    let big_n = (m - 2) * (n - 2) + 4;
    let t = m;
    let a = (big_n - m) / 2;
    let st = big_n - 1 - a;
    let mut arcs = Vec::new();
    for i in 0..a {
        arcs.push([Endpoint::bottom(i), Endpoint::bottom(2 * a - 1 - i)]);
    }
    for i in 0..a {
        arcs.push([Endpoint::top(st + i), Endpoint::top(st + 2 * a - 1 - i)]);
    }
    for k in 0..t {
        let (q, r) = ((k + 4).div_euclid(t), (k + 4).rem_euclid(t));
        arcs.push([Endpoint::bottom(2 * a + k), Endpoint::top(st + 2 * a + r + q * big_n)]);
    }
    Ok(DiagramDescription {
        n: big_n as usize,
        arcs,
        w: Basepoint::below((st + a - 1).rem_euclid(big_n)),
        z: Basepoint::above(a - 1),
        name: Some(format!("pretzel-{m}-{n}")),
    })
}

/// Rename the generators of an engine complex built from
/// [`build_diagram`]`(m, n)`.
pub fn rename_engine_complex(c: &FilteredComplex, m: i64, n: i64) -> Result<FilteredComplex, PretzelError> {
    let names = diagram_generator_names(m, n)?;
    let mut out = c.clone();
    for (k, g) in out.generators.iter_mut().enumerate() {
        g.name = names[k].clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_d_squared;

    #[test]
    fn params() {
        let p = PretzelParams::new(7, 5, 5).unwrap();
        assert_eq!((p.g, p.m_prime, p.n_prime, p.gamma, p.delta), (6, 2, 1, -2, 2));
        let p = PretzelParams::new(7, 7, 5).unwrap();
        assert_eq!((p.g, p.gamma, p.delta), (7, -2, 3));
        assert!(PretzelParams::new(4, 3, 3).is_err());
        assert!(PretzelParams::new(5, 3, 5).is_err());
        assert!(PretzelParams::new(3, 5, 3).is_err());
    }

    #[test]
    fn closed_form_5_3() {
        let t = closed_form(5, 3).unwrap();
        assert_eq!(t.genus, 4);
        let pos: Vec<_> = t.groups.iter().filter(|(k, _)| k.0 >= 0).map(|(&k, g)| (k, g.rank)).collect();
        assert_eq!(pos, vec![((0, 3), 1), ((1, 4), 1), ((3, 7), 1), ((4, 8), 1)]);
        assert_eq!(t.tau, Some(-4));
    }

    #[test]
    fn closed_form_3_3_euler() {
        let t = closed_form(3, 3).unwrap();
        let e: Vec<_> = t.euler.iter().map(|(&k, &v)| (k, v)).collect();
        assert_eq!(e, vec![(-3, 1), (-2, -1), (0, 1), (2, -1), (3, 1)]);
        assert_eq!(t.euler_at_one(), 1);
    }

    #[test]
    fn oracle_7_5_shape() {
        let c = oracle_complex(7, 5).unwrap();
        assert_eq!(c.generators.len(), 19);
        assert!(verify_d_squared(&c).is_ok());
        assert_eq!(c.boundary_of("y4"), vec![(-1, "y3".to_string(), 1, 0)]);
        assert!(matches!(oracle_complex(5, 3), Err(PretzelError::BadParams(_))));
    }

    #[test]
    fn offsets_match_shifts() {
        let p = PretzelParams::new(9, 7, 5).unwrap();
        let off: BTreeMap<_, _> = oracle_generators(&p).into_iter().collect();
        for (a, b, nw, nz, _) in oracle_terms(&p) {
            assert_eq!(off[&a].0 - off[&b].0, nw as i64);
            assert_eq!(off[&a].1 - off[&b].1, nz as i64);
        }
    }

    #[test]
    fn diagram_size() {
        let d = build_diagram(5, 5).unwrap();
        assert_eq!(d.n, 13);
        assert_eq!(diagram_generator_names(5, 5).unwrap().len(), 13);
    }
}
