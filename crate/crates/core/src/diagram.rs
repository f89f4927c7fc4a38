//! Combinatorial encoding of genus-1 doubly pointed Heegaard diagrams.
//!
//! Cutting the torus along `alpha` leaves an annulus whose universal cover is
//! a horizontal strip. The `n` intersection points of `alpha` and `beta`
//! appear on both boundary lines of the strip at integer positions, and their
//! residues mod `n` name the generators. `beta` becomes `n` disjoint arcs in
//! the strip, each joining two marked points; an arc is a *cap* when both of
//! its endpoints lie on the same boundary line and a *through arc* otherwise.
//!
//! Regluing the top line to the bottom line (equal positions identified)
//! recovers the torus.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Bottom,
    Top,
}

/// A marked point on one boundary line of the strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, Boundary)", into = "(i64, Boundary)")]
pub struct Endpoint {
    pub boundary: Boundary,
    pub pos: i64,
}

impl Endpoint {
    pub fn bottom(pos: i64) -> Self {
        Endpoint { boundary: Boundary::Bottom, pos }
    }

    pub fn top(pos: i64) -> Self {
        Endpoint { boundary: Boundary::Top, pos }
    }
}

impl From<(i64, Boundary)> for Endpoint {
    fn from((pos, boundary): (i64, Boundary)) -> Self {
        Endpoint { boundary, pos }
    }
}

impl From<Endpoint> for (i64, Boundary) {
    fn from(e: Endpoint) -> Self {
        (e.pos, e.boundary)
    }
}

/// Which side of `alpha` a basepoint sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

/// Region selector: the region touching the `alpha` edge between intersection
/// points `gap` and `gap + 1` (mod n), on the given side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Basepoint {
    pub gap: i64,
    pub side: Side,
}

impl Basepoint {
    pub fn above(gap: i64) -> Self {
        Basepoint { gap, side: Side::Above }
    }

    pub fn below(gap: i64) -> Self {
        Basepoint { gap, side: Side::Below }
    }
}

/// Raw diagram as read from a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDescription {
    pub n: usize,
    pub arcs: Vec<[Endpoint; 2]>,
    pub w: Basepoint,
    pub z: Basepoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl DiagramDescription {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("ResidueCoverage: {0}")]
    ResidueCoverage(String),
    #[error("NotEmbeddable: {0}")]
    NotEmbeddable(String),
    #[error("NotConnected: beta closes up after {visited} of {n} arcs")]
    NotConnected { visited: usize, n: usize },
    #[error("NotS3: algebraic intersection of beta with alpha is {0}, expected +1 or -1")]
    NotS3(i64),
    #[error("BadBasepoint: {0}")]
    BadBasepoint(String),
}

impl DiagramError {
    pub fn kind(&self) -> &'static str {
        match self {
            DiagramError::ResidueCoverage(_) => "ResidueCoverage",
            DiagramError::NotEmbeddable(_) => "NotEmbeddable",
            DiagramError::NotConnected { .. } => "NotConnected",
            DiagramError::NotS3(_) => "NotS3",
            DiagramError::BadBasepoint(_) => "BadBasepoint",
        }
    }
}

/// Shape of an arc after canonical orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcShape {
    /// `lo < hi`, both on the bottom line.
    BottomCap { lo: i64, hi: i64 },
    /// `lo < hi`, both on the top line.
    TopCap { lo: i64, hi: i64 },
    Through { bottom: i64, top: i64 },
}

pub fn arc_shape(arc: &[Endpoint; 2]) -> ArcShape {
    let [a, b] = *arc;
    match (a.boundary, b.boundary) {
        (Boundary::Bottom, Boundary::Bottom) => ArcShape::BottomCap { lo: a.pos.min(b.pos), hi: a.pos.max(b.pos) },
        (Boundary::Top, Boundary::Top) => ArcShape::TopCap { lo: a.pos.min(b.pos), hi: a.pos.max(b.pos) },
        (Boundary::Bottom, Boundary::Top) => ArcShape::Through { bottom: a.pos, top: b.pos },
        (Boundary::Top, Boundary::Bottom) => ArcShape::Through { bottom: b.pos, top: a.pos },
    }
}

/// Orient an arc (bottom endpoint first for through arcs, smaller position
/// first for caps) and translate it by a multiple of `n` so that its first
/// endpoint lies in `[0, n)`.
fn canonical_arc(arc: &[Endpoint; 2], n: i64) -> [Endpoint; 2] {
    let [mut a, mut b] = *arc;
    if (a.boundary, a.pos) > (b.boundary, b.pos) && a.boundary == b.boundary || a.boundary == Boundary::Top && b.boundary == Boundary::Bottom {
        std::mem::swap(&mut a, &mut b);
    }
    let shift = a.pos.div_euclid(n) * n;
    a.pos -= shift;
    b.pos -= shift;
    [a, b]
}

/// Canonical form: arcs oriented, reduced so their first endpoint lies in
/// `[0, n)`, and sorted. Residues (and so generator labels) are preserved.
pub fn canonicalize(raw: &DiagramDescription) -> DiagramDescription {
    let n = raw.n.max(1) as i64;
    let mut arcs: Vec<[Endpoint; 2]> = raw.arcs.iter().map(|a| canonical_arc(a, n)).collect();
    arcs.sort();
    DiagramDescription {
        n: raw.n,
        arcs,
        w: Basepoint { gap: raw.w.gap, side: raw.w.side },
        z: Basepoint { gap: raw.z.gap, side: raw.z.side },
        name: raw.name.clone(),
    }
}

/// One arc of the `beta` traversal, placed in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub arc: usize,
    /// Traversed from endpoint 1 to endpoint 0.
    pub reversed: bool,
    /// Strip layer `[layer, layer + 1]` holding the arc.
    pub layer: i64,
    /// Horizontal offset added to the arc's positions.
    pub shift: i64,
}

impl Step {
    pub fn entry<'a>(&self, arcs: &'a [[Endpoint; 2]]) -> &'a Endpoint {
        &arcs[self.arc][self.reversed as usize]
    }

    pub fn exit<'a>(&self, arcs: &'a [[Endpoint; 2]]) -> &'a Endpoint {
        &arcs[self.arc][1 - self.reversed as usize]
    }
}

/// A complementary region of `alpha` and `beta` on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionId {
    /// Innermost region under the bottom cap whose left end has this residue.
    UnderBottomCap(usize),
    /// Innermost region under the top cap whose left end has this residue.
    UnderTopCap(usize),
    /// Band between through arcs `k` and `k + 1` (through arcs ordered by
    /// bottom position).
    Band(usize),
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionId::UnderBottomCap(r) => write!(f, "bottom-cap-{r}"),
            RegionId::UnderTopCap(r) => write!(f, "top-cap-{r}"),
            RegionId::Band(k) => write!(f, "band-{k}"),
        }
    }
}

/// A validated, canonical diagram together with its `beta` traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram11 {
    n: usize,
    arcs: Vec<[Endpoint; 2]>,
    w: Basepoint,
    z: Basepoint,
    name: Option<String>,
    traversal: Vec<Step>,
    translation: (i64, i64),
    /// Through arcs as (bottom, top), sorted by bottom position.
    through: Vec<(i64, i64)>,
}

impl Diagram11 {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[[Endpoint; 2]] {
        &self.arcs
    }

    pub fn w(&self) -> Basepoint {
        self.w
    }

    pub fn z(&self) -> Basepoint {
        self.z
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Arcs in the order `beta` visits them, starting with the arc leaving
    /// the bottom marked point of residue 0.
    pub fn traversal(&self) -> &[Step] {
        &self.traversal
    }

    /// Deck translation of the lifted `beta` after one full traversal, in
    /// (position, layer) units.
    pub fn translation(&self) -> (i64, i64) {
        self.translation
    }

    pub fn algebraic_intersection(&self) -> i64 {
        self.translation.1
    }

    pub fn description(&self) -> DiagramDescription {
        DiagramDescription { n: self.n, arcs: self.arcs.clone(), w: self.w, z: self.z, name: self.name.clone() }
    }

    pub fn region_of(&self, sel: Basepoint) -> RegionId {
        let n = self.n as i64;
        let gap = sel.gap;
        let caps = |want_top: bool| {
            self.arcs.iter().filter_map(move |a| match (arc_shape(a), want_top) {
                (ArcShape::BottomCap { lo, hi }, false) | (ArcShape::TopCap { lo, hi }, true) => Some((lo, hi)),
                _ => None,
            })
        };
        let innermost = |want_top: bool| {
            let mut best: Option<(i64, i64)> = None;
            for (lo, hi) in caps(want_top) {
                // translate so that lo <= gap < lo + n
                let k = (gap - lo).div_euclid(n);
                let (l, h) = (lo + k * n, hi + k * n);
                if l <= gap && gap < h && best.is_none_or(|(bl, bh)| h - l < bh - bl) {
                    best = Some((l, h));
                }
            }
            best
        };
        let t = self.through.len();
        match sel.side {
            Side::Above => {
                if let Some((lo, _)) = innermost(false) {
                    return RegionId::UnderBottomCap(lo.rem_euclid(n) as usize);
                }
                let g = gap.rem_euclid(n);
                let k = self.through.iter().rposition(|&(b, _)| b <= g).unwrap_or(t - 1);
                RegionId::Band(k)
            }
            Side::Below => {
                if let Some((lo, _)) = innermost(true) {
                    return RegionId::UnderTopCap(lo.rem_euclid(n) as usize);
                }
                let base = self.through[0].1;
                let g = base + (gap - base).rem_euclid(n);
                let k = self.through.iter().rposition(|&(_, top)| top <= g).unwrap_or(t - 1);
                RegionId::Band(k)
            }
        }
    }

    /// Every complementary region, each with one selector that reaches it.
    pub fn regions(&self) -> Vec<(RegionId, Basepoint)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for side in [Side::Above, Side::Below] {
            for gap in 0..self.n as i64 {
                let sel = Basepoint { gap, side };
                let r = self.region_of(sel);
                if seen.insert(r) {
                    out.push((r, sel));
                }
            }
        }
        out
    }
}

/// Caps on the same line, as given, must not interleave.
fn check_chords(arcs: &[[Endpoint; 2]]) -> Result<(), DiagramError> {
    let caps: Vec<(Boundary, i64, i64)> = arcs
        .iter()
        .filter_map(|a| match arc_shape(a) {
            ArcShape::BottomCap { lo, hi } => Some((Boundary::Bottom, lo, hi)),
            ArcShape::TopCap { lo, hi } => Some((Boundary::Top, lo, hi)),
            ArcShape::Through { .. } => None,
        })
        .collect();
    for (i, &(s1, a, b)) in caps.iter().enumerate() {
        for &(s2, c, d) in &caps[i + 1..] {
            if s1 == s2 && ((a < c && c < b && b < d) || (c < a && a < d && d < b)) {
                return Err(DiagramError::NotEmbeddable(format!("caps {a}..{b} and {c}..{d} on the {s1:?} line interleave")));
            }
        }
    }
    Ok(())
}

fn check_embedding(arcs: &[[Endpoint; 2]], n: i64) -> Result<(), DiagramError> {
    let shapes: Vec<ArcShape> = arcs.iter().map(arc_shape).collect();
    let mut bottom_caps = Vec::new();
    let mut top_caps = Vec::new();
    let mut through = Vec::new();
    for s in &shapes {
        match *s {
            ArcShape::BottomCap { lo, hi } => bottom_caps.push((lo, hi)),
            ArcShape::TopCap { lo, hi } => top_caps.push((lo, hi)),
            ArcShape::Through { bottom, top } => through.push((bottom, top)),
        }
    }
    for (label, caps) in [("bottom", &bottom_caps), ("top", &top_caps)] {
        for &(lo, hi) in caps.iter() {
            if hi - lo > n {
                return Err(DiagramError::NotEmbeddable(format!(
                    "{label} cap {lo}..{hi} is wider than the period {n} and meets its own translate"
                )));
            }
        }
        for (i, &(a, b)) in caps.iter().enumerate() {
            for &(c, d) in caps.iter().skip(i + 1) {
                for k in -3..=3 {
                    let (c, d) = (c + k * n, d + k * n);
                    if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                        return Err(DiagramError::NotEmbeddable(format!(
                            "{label} caps {a}..{b} and {c}..{d} interleave"
                        )));
                    }
                }
            }
        }
    }
    let inside = |p: i64, lo: i64, hi: i64| {
        let r = (p - lo).rem_euclid(n);
        r != 0 && r < hi - lo
    };
    for &(b, t) in &through {
        if let Some(&(lo, hi)) = bottom_caps.iter().find(|&&(lo, hi)| inside(b, lo, hi)) {
            return Err(DiagramError::NotEmbeddable(format!(
                "through arc from bottom {b} starts under bottom cap {lo}..{hi}"
            )));
        }
        if let Some(&(lo, hi)) = top_caps.iter().find(|&&(lo, hi)| inside(t, lo, hi)) {
            return Err(DiagramError::NotEmbeddable(format!(
                "through arc to top {t} ends under top cap {lo}..{hi}"
            )));
        }
    }
    for (i, &(b1, t1)) in through.iter().enumerate() {
        for &(b2, t2) in through.iter().skip(i + 1) {
            // translates of the two arcs must keep their left-right order
            let db = (b1 - b2).rem_euclid(n);
            if db == 0 {
                continue;
            }
            // bring arc 2 to the translate just right of arc 1 on the bottom
            let k = (b1 - b2).div_euclid(n) + 1;
            let (b2, t2) = (b2 + k * n, t2 + k * n);
            debug_assert!(b1 < b2 && b2 < b1 + n);
            if !(t1 < t2 && t2 < t1 + n) {
                return Err(DiagramError::NotEmbeddable(format!(
                    "through arcs {b1}->{t1} and {b2}->{t2} (or their translates) cross"
                )));
            }
        }
    }
    Ok(())
}

fn check_residues(arcs: &[[Endpoint; 2]], n: usize) -> Result<(), DiagramError> {
    let nn = n as i64;
    for boundary in [Boundary::Bottom, Boundary::Top] {
        let mut seen = vec![false; n];
        for e in arcs.iter().flatten().filter(|e| e.boundary == boundary) {
            let r = e.pos.rem_euclid(nn) as usize;
            if seen[r] {
                return Err(DiagramError::ResidueCoverage(format!(
                    "residue {r} used twice on the {boundary:?} line"
                )));
            }
            seen[r] = true;
        }
        if let Some(r) = seen.iter().position(|s| !s) {
            return Err(DiagramError::ResidueCoverage(format!("residue {r} missing on the {boundary:?} line")));
        }
    }
    Ok(())
}

fn traverse(arcs: &[[Endpoint; 2]], n: usize) -> Result<(Vec<Step>, (i64, i64)), DiagramError> {
    let nn = n as i64;
    let mut slot = vec![[None; 2]; n];
    for (ai, arc) in arcs.iter().enumerate() {
        for (ei, e) in arc.iter().enumerate() {
            slot[e.pos.rem_euclid(nn) as usize][(e.boundary == Boundary::Top) as usize] = Some((ai, ei));
        }
    }
    let find = |boundary: Boundary, residue: i64| {
        slot[residue.rem_euclid(nn) as usize][(boundary == Boundary::Top) as usize].expect("residues checked")
    };
    let start = find(Boundary::Bottom, 0);
    let (mut arc, mut entry) = start;
    let (mut layer, mut shift) = (0i64, 0i64);
    let mut steps = Vec::with_capacity(n);
    loop {
        steps.push(Step { arc, reversed: entry == 1, layer, shift });
        let exit = arcs[arc][1 - entry];
        let x = exit.pos + shift;
        let next = match exit.boundary {
            Boundary::Top => {
                layer += 1;
                find(Boundary::Bottom, exit.pos)
            }
            Boundary::Bottom => {
                layer -= 1;
                find(Boundary::Top, exit.pos)
            }
        };
        shift = x - arcs[next.0][next.1].pos;
        (arc, entry) = next;
        if (arc, entry) == start {
            break;
        }
        if steps.len() > n {
            break;
        }
    }
    if steps.len() != n {
        return Err(DiagramError::NotConnected { visited: steps.len(), n });
    }
    Ok((steps, (shift, layer)))
}

/// Validate a raw description and return its canonical form.
pub fn validate(raw: &DiagramDescription) -> Result<Diagram11, DiagramError> {
    let n = raw.n;
    if n == 0 {
        return Err(DiagramError::ResidueCoverage("a diagram needs at least one intersection point".into()));
    }
    if raw.arcs.len() != n {
        return Err(DiagramError::ResidueCoverage(format!("expected {n} arcs, found {}", raw.arcs.len())));
    }
    let canon = canonicalize(raw);
    let nn = n as i64;
    check_chords(&raw.arcs)?;
    check_residues(&canon.arcs, n)?;
    check_embedding(&canon.arcs, nn)?;
    let (traversal, translation) = traverse(&canon.arcs, n)?;
    if translation.1.abs() != 1 {
        return Err(DiagramError::NotS3(translation.1));
    }
    for (label, bp) in [("w", canon.w), ("z", canon.z)] {
        if !(0..nn).contains(&bp.gap) {
            return Err(DiagramError::BadBasepoint(format!("{label} gap {} outside [0, {n})", bp.gap)));
        }
    }
    if canon.w == canon.z {
        return Err(DiagramError::BadBasepoint("w and z use the same selector".into()));
    }
    let mut through: Vec<(i64, i64)> = canon
        .arcs
        .iter()
        .filter_map(|a| match arc_shape(a) {
            ArcShape::Through { bottom, top } => Some((bottom, top)),
            _ => None,
        })
        .collect();
    through.sort();
    Ok(Diagram11 {
        n,
        arcs: canon.arcs,
        w: canon.w,
        z: canon.z,
        name: canon.name,
        traversal,
        translation,
        through,
    })
}

/// Exchange `w` and `z`; this reverses the orientation of the knot.
pub fn mirror_swap_basepoints(d: &Diagram11) -> Diagram11 {
    let mut out = d.clone();
    std::mem::swap(&mut out.w, &mut out.z);
    out
}
