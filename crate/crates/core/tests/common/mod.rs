//! Test-only helpers: an independent homology oracle over prime fields and
//! a generator of random diagrams.
#![allow(dead_code)]

use std::collections::BTreeMap;

use elevenfloer::algebra::FilteredComplex;
use elevenfloer::diagram::{Basepoint, DiagramDescription, Endpoint, Side};

pub const PRIMES: [i64; 4] = [2, 3, 5, 1_000_003];

fn inv(a: i64, p: i64) -> i64 {
    let (mut r, mut e, mut b) = (1i64, p - 2, a.rem_euclid(p));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-reduce in place over F_p, returning the pivot columns.
fn reduce(rows: &mut [Vec<i64>], p: i64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] % p != 0) else { continue };
        rows.swap(r, k);
        let f = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * f % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] - f * rows[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    reduce(&mut rows, p).len()
}

/// Basis of `{v : M v = 0}` over F_p, for `M` with `cols` columns.
fn kernel_mod(m: &[Vec<i64>], cols: usize, p: i64) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let pivots = reduce(&mut rows, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (-rows[r][f]).rem_euclid(p);
            }
            v
        })
        .collect()
}

fn grades(c: &FilteredComplex) -> Vec<(i64, i64)> {
    c.generators.iter().map(|g| (g.alexander.expect("graded"), g.maslov.expect("graded"))).collect()
}

/// Matrix of the differential restricted to terms accepted by `keep`,
/// from generators in `src` to generators in `dst` (rows = dst).
fn block(c: &FilteredComplex, src: &[usize], dst: &[usize], keep: impl Fn(u32, u32) -> bool) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; src.len()]; dst.len()];
    for t in &c.terms {
        if !keep(t.n_w, t.n_z) {
            continue;
        }
        if let (Some(j), Some(i)) = (src.iter().position(|&g| g == t.from), dst.iter().position(|&g| g == t.to)) {
            m[i][j] += t.coef;
        }
    }
    m
}

/// Ranks of the homology of the associated graded complex over F_p, by
/// `(A, M)`.
pub fn hfk_ranks_mod(c: &FilteredComplex, p: i64) -> BTreeMap<(i64, i64), usize> {
    let gr = grades(c);
    let mut keys: Vec<(i64, i64)> = gr.clone();
    keys.sort();
    keys.dedup();
    let at = |k: (i64, i64)| -> Vec<usize> { (0..gr.len()).filter(|&g| gr[g] == k).collect() };
    let diag = |u: u32, v: u32| u == 0 && v == 0;
    let mut out = BTreeMap::new();
    for &(a, m) in &keys {
        let here = at((a, m));
        let below = at((a, m - 1));
        let above = at((a, m + 1));
        let out_rank = rank_mod(&block(c, &here, &below, diag), p);
        let in_rank = rank_mod(&block(c, &above, &here, diag), p);
        let r = here.len() - out_rank - in_rank;
        if r > 0 {
            out.insert((a, m), r);
        }
    }
    out
}

/// Homology of the hat complex over F_p, by Maslov grading.
pub fn hat_ranks_mod(c: &FilteredComplex, p: i64) -> BTreeMap<i64, usize> {
    let gr = grades(c);
    let mut ms: Vec<i64> = gr.iter().map(|g| g.1).collect();
    ms.sort();
    ms.dedup();
    let at = |m: i64| -> Vec<usize> { (0..gr.len()).filter(|&g| gr[g].1 == m).collect() };
    let hat = |u: u32, _: u32| u == 0;
    let mut out = BTreeMap::new();
    for &m in &ms {
        let r = at(m).len() - rank_mod(&block(c, &at(m), &at(m - 1), hat), p) - rank_mod(&block(c, &at(m + 1), &at(m), hat), p);
        if r > 0 {
            out.insert(m, r);
        }
    }
    out
}

/// Least `s` for which a degree-0 cycle of filtration level `s` survives in
/// the hat homology over F_p.
pub fn tau_mod(c: &FilteredComplex, p: i64) -> i64 {
    let gr = grades(c);
    let hat = |u: u32, _: u32| u == 0;
    let deg = |m: i64| -> Vec<usize> { (0..gr.len()).filter(|&g| gr[g].1 == m).collect() };
    let d0 = deg(0);
    let boundaries = block(c, &deg(1), &d0, hat);
    let b_cols: Vec<Vec<i64>> = (0..boundaries.first().map_or(0, Vec::len)).map(|j| boundaries.iter().map(|r| r[j]).collect()).collect();
    let b_rank = rank_mod(&b_cols, p);
    let mut levels: Vec<i64> = gr.iter().map(|g| g.0).collect();
    levels.sort();
    levels.dedup();
    for s in levels {
        let sub: Vec<usize> = d0.iter().copied().filter(|&g| gr[g].0 <= s).collect();
        let d = block(c, &sub, &deg(-1), hat);
        let kernel = kernel_mod(&d, sub.len(), p);
        let mut rows = b_cols.clone();
        for v in kernel {
            let mut full = vec![0; d0.len()];
            for (k, &g) in sub.iter().enumerate() {
                full[d0.iter().position(|&x| x == g).unwrap()] = v[k];
            }
            rows.push(full);
        }
        if rank_mod(&rows, p) > b_rank {
            return s;
        }
    }
    panic!("hat homology vanishes in degree 0");
}

/// Nested caps and through points on one boundary line: `a` caps placed in
/// random slots between the `n - 2a` through points, each slot a random
/// balanced word.
fn rand_side(n: usize, a: usize, rng: &mut impl FnMut(usize) -> usize) -> (Vec<(i64, i64)>, Vec<i64>) {
    let t = n - 2 * a;
    let mut slots = vec![0usize; t + 1];
    for _ in 0..a {
        slots[rng(t + 1)] += 1;
    }
    let mut seq = Vec::new();
    for (i, &k) in slots.iter().enumerate() {
        let mut w: Vec<bool> = std::iter::repeat_n(true, k).chain(std::iter::repeat_n(false, k)).collect();
        for j in (1..w.len()).rev() {
            w.swap(j, rng(j + 1));
        }
        let (mut bal, mut lowest, mut cut) = (0i64, 0i64, 0usize);
        for (j, &open) in w.iter().enumerate() {
            bal += if open { 1 } else { -1 };
            if bal < lowest {
                lowest = bal;
                cut = j + 1;
            }
        }
        w.rotate_left(cut);
        seq.extend(w.into_iter().map(Some));
        if i < t {
            seq.push(None);
        }
    }
    let (mut caps, mut through, mut stack) = (Vec::new(), Vec::new(), Vec::new());
    for (p, ch) in seq.into_iter().enumerate() {
        match ch {
            Some(true) => stack.push(p as i64),
            Some(false) => caps.push((stack.pop().unwrap(), p as i64)),
            None => through.push(p as i64),
        }
    }
    (caps, through)
}

/// A random diagram description from a seed; not necessarily valid.
pub fn random_diagram(n: usize, seed: u64) -> DiagramDescription {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut rng = move |k: usize| -> usize {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % k as u64) as usize
    };
    let a = rng((n - 1) / 2 + 1);
    let (bcaps, bthr) = rand_side(n, a, &mut rng);
    let (tcaps, tthr) = rand_side(n, a, &mut rng);
    let t = bthr.len();
    let twist = rng(2 * t + 1) as i64 - t as i64;
    let mut arcs = Vec::new();
    arcs.extend(bcaps.iter().map(|&(l, h)| [Endpoint::bottom(l), Endpoint::bottom(h)]));
    arcs.extend(tcaps.iter().map(|&(l, h)| [Endpoint::top(l), Endpoint::top(h)]));
    for (k, &b) in bthr.iter().enumerate() {
        let j = k as i64 + twist;
        let (q, r) = (j.div_euclid(t as i64), j.rem_euclid(t as i64));
        arcs.push([Endpoint::bottom(b), Endpoint::top(tthr[r as usize] + q * n as i64)]);
    }
    let side = |b: bool| if b { Side::Above } else { Side::Below };
    let w = Basepoint { gap: rng(n) as i64, side: side(rng(2) == 0) };
    let z = Basepoint { gap: rng(n) as i64, side: side(rng(2) == 0) };
    DiagramDescription { n, arcs, w, z, name: Some(format!("random-{n}-{seed}")) }
}

/// The invariant checks every complex must pass, with the homology
/// recomputed over prime fields. `c` carries normalized gradings.
pub fn property_suite(c: &FilteredComplex) -> Result<(), String> {
    if elevenfloer::algebra::verify_d_squared(c).is_err() {
        return Err("d^2 != 0".into());
    }
    if let Some(t) = c.terms.iter().find(|t| t.coef.abs() != 1) {
        return Err(format!("coefficient {} from {} to {}", t.coef, t.from, t.to));
    }
    let ranks = hfk_ranks_mod(c, PRIMES[0]);
    for &p in &PRIMES[1..] {
        if hfk_ranks_mod(c, p) != ranks {
            return Err(format!("ranks differ mod 2 and mod {p}: torsion"));
        }
    }
    for &p in &PRIMES {
        let hat = hat_ranks_mod(c, p);
        if hat != BTreeMap::from([(0, 1)]) {
            return Err(format!("hat homology mod {p} is {hat:?}"));
        }
    }
    for (&(a, m), &r) in &ranks {
        if ranks.get(&(-a, m - 2 * a)) != Some(&r) {
            return Err(format!("asymmetric at A={a}, M={m}"));
        }
    }
    let mut euler: BTreeMap<i64, i64> = BTreeMap::new();
    for (&(a, m), &r) in &ranks {
        *euler.entry(a).or_default() += if m.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) };
    }
    if euler.iter().any(|(a, v)| euler.get(&-a) != Some(v)) {
        return Err("Euler polynomial not symmetric".into());
    }
    let p1: i64 = euler.values().sum();
    if p1.abs() != 1 {
        return Err(format!("P(1) = {p1}"));
    }
    Ok(())
}

/// The library's bigraded homology as plain ranks, asserting it is free.
pub fn library_ranks(c: &FilteredComplex) -> BTreeMap<(i64, i64), usize> {
    let h = elevenfloer::algebra::bigraded_homology(c).expect("graded complex");
    assert!(h.values().all(|g| g.torsion.is_empty()), "torsion in {h:?}");
    h.into_iter().filter(|(_, g)| g.rank > 0).map(|(k, g)| (k, g.rank)).collect()
}
