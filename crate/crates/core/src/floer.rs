//! Generators, bigons and the filtered complex of a lifted diagram.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{verify_d_squared, CfkGenerator, FilteredComplex, Term};
use crate::cover::{cross, dot, route, initial_window, winding, CoverError, LiftedDiagram, Point};
use crate::diagram::{Diagram11, RegionId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("WindowUnstable: bigon enumeration still changing at a window of {window} periods")]
    WindowUnstable { window: usize },
    #[error("DSquaredNonzero: coefficient {coef} of {to} (n_w={n_w}, n_z={n_z}) in the square of the differential on {from}")]
    DSquaredNonzero { from: String, to: String, n_w: u32, n_z: u32, coef: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub index: usize,
    /// Canonical lift, on period 0 of the lifted `beta`.
    pub lift: Point,
    pub alexander: Option<i64>,
    pub maslov: Option<i64>,
}

/// Where a bigon sits in the lifted diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigonGeometry {
    /// The `beta` side of the bigon is `beta[lo..=hi]`; the `alpha` side is
    /// the segment joining its ends.
    pub lo: usize,
    pub hi: usize,
    pub from_vertex: usize,
    pub to_vertex: usize,
    /// The `beta` side passes through the open `alpha` side, so the disk is
    /// immersed rather than embedded.
    pub immersed: bool,
}

impl BigonGeometry {
    pub fn polygon(&self, l: &LiftedDiagram) -> Vec<Point> {
        l.beta()[self.lo..=self.hi].to_vec()
    }

    pub fn from_corner(&self, l: &LiftedDiagram) -> Point {
        l.beta()[self.from_vertex]
    }

    pub fn to_corner(&self, l: &LiftedDiagram) -> Point {
        l.beta()[self.to_vertex]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigonClass {
    pub from: usize,
    pub to: usize,
    pub n_w: u32,
    pub n_z: u32,
    pub sign: i8,
    pub geometry: BigonGeometry,
}

impl BigonClass {
    pub fn key(&self) -> (usize, usize, u32, u32, i8) {
        (self.from, self.to, self.n_w, self.n_z, self.sign)
    }
}

/// Sign of a bigon from its two corners, where `from` is the corner at which
/// the counterclockwise boundary traversal leaves along `beta`. That traversal
/// returns along `alpha` from `to` to `from`; the sign is `+1` exactly when
/// this runs in the positive `alpha` direction.
pub fn sign(from: Point, to: Point) -> i8 {
    if from.x > to.x {
        1
    } else {
        -1
    }
}

/// Split a closed polygon formed by a `beta` subarc `poly[0..]` and the
/// `alpha` segment back to `poly[0]` into its `(from, to)` corner indices
/// (0 or `poly.len() - 1`), oriented counterclockwise.
pub fn corners(poly: &[Point]) -> (usize, usize) {
    if crate::cover::area2(poly) > 0 {
        (0, poly.len() - 1)
    } else {
        (poly.len() - 1, 0)
    }
}

pub fn generators(l: &LiftedDiagram) -> Vec<Generator> {
    l.canonical_crossings()
        .into_iter()
        .map(|c| Generator { index: c.generator, lift: l.beta()[c.vertex], alexander: None, maslov: None })
        .collect()
}

fn half(d: Point) -> u8 {
    if d.y > 0 || (d.y == 0 && d.x > 0) {
        0
    } else {
        1
    }
}

/// Argument comparison in `[0, 2 pi)`.
fn arg_less(a: Point, b: Point) -> bool {
    let (ha, hb) = (half(a), half(b));
    ha < hb || (ha == hb && cross(a, b) > 0)
}

/// Per-segment turning data along the polyline.
struct Turning {
    /// Lifted argument of each vertical segment in quarter turns.
    quarter: Vec<i64>,
}

impl Turning {
    fn new(beta: &[Point]) -> Self {
        let dirs: Vec<Point> = beta.windows(2).map(|w| w[1] - w[0]).collect();
        let mut turns = 0i64;
        let mut quarter = Vec::with_capacity(dirs.len());
        for k in 0..dirs.len() {
            if k > 0 {
                let (a, b) = (dirs[k - 1], dirs[k]);
                let c = cross(a, b);
                debug_assert!(c != 0 || dot(a, b) > 0, "beta reverses direction");
                if c > 0 && arg_less(b, a) {
                    turns += 1;
                } else if c < 0 && arg_less(a, b) {
                    turns -= 1;
                }
            }
            let d = dirs[k];
            quarter.push(match (d.x, d.y.signum()) {
                (0, 1) => 4 * turns + 1,
                (0, -1) => 4 * turns + 3,
                _ => i64::MIN,
            });
        }
        Turning { quarter }
    }

    /// Turning of `beta` from the segment leaving vertex `a` to the segment
    /// arriving at vertex `b` (`a < b`), in quarter turns.
    fn between(&self, a: usize, b: usize) -> i64 {
        let (s, e) = (self.quarter[a], self.quarter[b - 1]);
        debug_assert!(s != i64::MIN && e != i64::MIN, "crossings sit on vertical segments");
        e - s
    }
}

fn double(poly: &[Point]) -> Vec<Point> {
    poly.iter().map(|p| Point::new(2 * p.x, 2 * p.y)).collect()
}

/// Sum of the windings in the four quadrants around `p` (doubled polygon).
fn quadrants(poly2: &[Point], p: Point) -> [i64; 4] {
    let c = Point::new(2 * p.x, 2 * p.y);
    [(-1, -1), (-1, 1), (1, -1), (1, 1)].map(|(dx, dy)| winding(poly2, c + Point::new(dx, dy)))
}

/// Every face of the closed polygon has winding number of sign `orient` or 0.
fn windings_have_sign(poly: &[Point], orient: i64) -> bool {
    let mut ys: Vec<i64> = poly.iter().map(|p| p.y).collect();
    ys.sort_unstable();
    ys.dedup();
    let m = poly.len();
    for w in ys.windows(2) {
        // horizontal sweep midway between consecutive vertex heights, in
        // doubled coordinates
        let y = w[0] + w[1];
        let mut hits: Vec<(i128, i128, i64)> = Vec::new();
        for i in 0..m {
            let (a, b) = (poly[i], poly[(i + 1) % m]);
            let (a2, b2) = (Point::new(2 * a.x, 2 * a.y), Point::new(2 * b.x, 2 * b.y));
            if (a2.y < y) != (b2.y < y) {
                // x = a.x + (y - a.y)(b.x - a.x)/(b.y - a.y), as num/den with den > 0
                let den = (b2.y - a2.y) as i128;
                let num = a2.x as i128 * den + (y - a2.y) as i128 * (b2.x - a2.x) as i128;
                let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
                hits.push((num, den, if b2.y > a2.y { -1 } else { 1 }));
            }
        }
        hits.sort_by(|p, q| (p.0 * q.1).cmp(&(q.0 * p.1)));
        let mut wn = 0;
        let mut k = 0;
        while k < hits.len() {
            let mut j = k;
            while j < hits.len() && hits[j].0 * hits[k].1 == hits[k].0 * hits[j].1 {
                wn += hits[j].2;
                j += 1;
            }
            if wn * orient < 0 {
                return false;
            }
            k = j;
        }
    }
    true
}

/// Enumerate bigon classes over the window of `l`.
///
/// Each class is found once, from the lift of its `from` corner on the
/// canonical period. A candidate is a pair of crossings on one `alpha` line
/// together with the `beta` subarc between them; it is accepted when the
/// closed curve it forms with the `alpha` segment bounds a positive domain
/// with two convex corners and total `beta` turning of a half turn, so an
/// embedded or immersed disk of index one.
pub fn bigons(l: &LiftedDiagram) -> Vec<BigonClass> {
    let beta = l.beta();
    let turning = Turning::new(beta);
    let mut prefix = Vec::with_capacity(beta.len());
    let mut acc: i128 = 0;
    prefix.push(0);
    for w in beta.windows(2) {
        acc += cross(w[0], w[1]);
        prefix.push(acc);
    }
    let mut by_line: HashMap<i64, Vec<usize>> = HashMap::new();
    let mut gen_at = HashMap::new();
    for c in l.crossings() {
        by_line.entry(beta[c.vertex].y).or_default().push(c.vertex);
        gen_at.insert(c.vertex, c.generator);
    }
    let mut out = Vec::new();
    for c in l.crossings().iter().filter(|c| c.period == 0) {
        let i = c.vertex;
        let y = beta[i].y;
        let line = &by_line[&y];
        for &j in line {
            if j == i {
                continue;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            let a2 = prefix[hi] - prefix[lo] + cross(beta[hi], beta[lo]);
            if a2 == 0 {
                continue;
            }
            let orient: i64 = if a2 > 0 { 1 } else { -1 };
            let (from, to) = if orient > 0 { (lo, hi) } else { (hi, lo) };
            if from != i {
                continue;
            }
            let sgn = sign(beta[from], beta[to]);
            let up0 = beta[lo + 1].y > y;
            let up1 = beta[hi - 1].y > y;
            if up0 != up1 || up0 != (sgn == 1) {
                continue;
            }
            if orient * turning.between(lo, hi) != 2 {
                continue;
            }
            let (xl, xh) = (beta[i].x.min(beta[j].x), beta[i].x.max(beta[j].x));
            let immersed = line.iter().any(|&k| lo < k && k < hi && xl < beta[k].x && beta[k].x < xh);
            let poly = &beta[lo..=hi];
            if immersed {
                let poly2 = double(poly);
                let corner_ok = |p: Point| {
                    let mut q = quadrants(&poly2, p).map(|w| w.abs());
                    q.sort_unstable();
                    q == [0, 0, 0, 1]
                };
                if !corner_ok(beta[from]) || !corner_ok(beta[to]) || !windings_have_sign(poly, orient) {
                    continue;
                }
            }
            let n_w = orient * l.multiplicity(poly, l.w_base());
            let n_z = orient * l.multiplicity(poly, l.z_base());
            debug_assert!(n_w >= 0 && n_z >= 0);
            out.push(BigonClass {
                from: c.generator,
                to: gen_at[&to],
                n_w: n_w as u32,
                n_z: n_z as u32,
                sign: sgn,
                geometry: BigonGeometry { lo, hi, from_vertex: from, to_vertex: to, immersed },
            });
        }
    }
    out.sort();
    out
}

fn class_keys(b: &[BigonClass]) -> Vec<(usize, usize, u32, u32, i8)> {
    let mut keys: Vec<_> = b.iter().map(BigonClass::key).collect();
    keys.sort_unstable();
    keys
}

/// Default cap on window doublings.
pub const DEFAULT_WINDOW_LIMIT: usize = 6;

/// Doubling limit from `ELEVENFLOER_WINDOW_LIMIT`, or the default.
pub fn window_limit_from_env() -> usize {
    std::env::var("ELEVENFLOER_WINDOW_LIMIT").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_WINDOW_LIMIT)
}

/// Route with growing windows until the bigon classes agree for two
/// consecutive window sizes. The window doubles at most `limit` times.
pub fn stable_bigons(d: &Diagram11, limit: usize) -> Result<(LiftedDiagram, Vec<BigonClass>), FloerError> {
    let mut window = initial_window(d);
    let mut l = route(d, window)?;
    let mut b = bigons(&l);
    for _ in 0..limit {
        let l2 = route(d, window * 2)?;
        let b2 = bigons(&l2);
        if class_keys(&b) == class_keys(&b2) {
            return Ok((l, b));
        }
        window *= 2;
        l = l2;
        b = b2;
    }
    Err(FloerError::WindowUnstable { window })
}

/// The filtered complex whose differential counts the given bigon classes.
pub fn build_cfk(l: &LiftedDiagram, classes: &[BigonClass]) -> Result<FilteredComplex, FloerError> {
    let generators = (0..l.n())
        .map(|k| CfkGenerator { name: format!("x{k}"), maslov: None, alexander: None })
        .collect();
    let mut merged: BTreeMap<(usize, usize, u32, u32), i64> = BTreeMap::new();
    for b in classes {
        *merged.entry((b.from, b.to, b.n_w, b.n_z)).or_default() += b.sign as i64;
    }
    let terms = merged
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|((from, to, n_w, n_z), coef)| Term { from, to, n_w, n_z, coef })
        .collect();
    let c = FilteredComplex { generators, terms };
    if let Err(w) = verify_d_squared(&c) {
        return Err(FloerError::DSquaredNonzero {
            from: c.generators[w.from].name.clone(),
            to: c.generators[w.to].name.clone(),
            n_w: w.n_w,
            n_z: w.n_z,
            coef: w.coef,
        });
    }
    Ok(c)
}

/// A 2-chain on the complementary regions joining two generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub from: usize,
    pub to: usize,
    /// Multiplicity of each region, normalized so the `w` region has 0.
    pub multiplicities: Vec<(RegionId, i64)>,
    pub n_w: i64,
    pub n_z: i64,
    /// Maslov index `e + n_x + n_y`.
    pub maslov_index: i64,
}

impl Domain {
    /// `(M(from) - M(to), A(from) - A(to))`.
    pub fn grading_shift(&self) -> (i64, i64) {
        (self.maslov_index - 2 * self.n_w, self.n_z - self.n_w)
    }
}

/// The domain from `x` to `y` with `n_w = 0`, the unique one up to the whole
/// surface. Its boundary runs along `beta` from `x` to `y` and back along
/// `alpha`.
pub fn domain_between(l: &LiftedDiagram, x: usize, y: usize) -> Domain {
    let beta = l.beta();
    let vx = l.canonical_crossings()[x].vertex;
    let line = beta[vx].y;
    let vy = l
        .crossings()
        .iter()
        .filter(|c| c.generator == y && beta[c.vertex].y == line)
        .map(|c| c.vertex)
        .min_by_key(|&v| v.abs_diff(vx))
        .expect("window covers every generator on the canonical line");
    if vx == vy {
        let multiplicities = l.regions().iter().map(|&(r, _)| (r, 0)).collect();
        return Domain { from: x, to: y, multiplicities, n_w: 0, n_z: 0, maslov_index: 0 };
    }
    let turning = Turning::new(beta);
    let (poly, turn) = if vx < vy {
        (beta[vx..=vy].to_vec(), turning.between(vx, vy))
    } else {
        let mut p = beta[vy..=vx].to_vec();
        p.reverse();
        (p, -turning.between(vy, vx))
    };
    let poly2 = double(&poly);
    let point_measure = |p: Point| l.sum_over_lattice(&poly, p, |q| quadrants(&poly2, q).iter().sum());
    let four_mu = turn + point_measure(beta[vx]) + point_measure(beta[vy]);
    debug_assert_eq!(four_mu % 4, 0);
    let n_w = l.multiplicity(&poly, l.w_base());
    let n_z = l.multiplicity(&poly, l.z_base());
    let multiplicities = l.regions().iter().map(|&(r, p)| (r, l.multiplicity(&poly, p) - n_w)).collect();
    Domain { from: x, to: y, multiplicities, n_w: 0, n_z: n_z - n_w, maslov_index: four_mu / 4 - 2 * n_w }
}
