//! Planar realization of a diagram in the universal cover of the torus.
//!
//! Coordinates are integers over a common denominator [`LiftedDiagram::scale`]:
//! a point `(x, y)` stands for `(x / scale, y / scale)` in strip units, where
//! `alpha` lifts to the lines `y = k` and marked points sit at integer `x`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{arc_shape, ArcShape, Basepoint, Boundary, Diagram11, RegionId, Side};
use crate::floer::BigonClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

pub fn cross(a: Point, b: Point) -> i128 {
    a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
}

pub fn dot(a: Point, b: Point) -> i128 {
    a.x as i128 * b.x as i128 + a.y as i128 * b.y as i128
}

/// Orientation of `c` relative to the directed line `a -> b`.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    cross(b - a, c - a)
}

/// Twice the signed area of a closed polygon.
pub fn area2(poly: &[Point]) -> i128 {
    let m = poly.len();
    (0..m).map(|i| cross(poly[i], poly[(i + 1) % m])).sum()
}

/// Winding number of a closed polygon around a point not on it.
pub fn winding(poly: &[Point], p: Point) -> i64 {
    let m = poly.len();
    let mut w = 0;
    for i in 0..m {
        let a = poly[i];
        let b = poly[(i + 1) % m];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share a point.
pub fn segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a).signum();
    let d2 = orient(c, d, b).signum();
    let d3 = orient(a, b, c).signum();
    let d4 = orient(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("WindowTooSmall: window of {given} periods, at least {needed} required")]
    WindowTooSmall { given: usize, needed: usize },
}

/// A point where the lifted `beta` meets an `alpha` line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Index into [`LiftedDiagram::beta`].
    pub vertex: usize,
    pub generator: usize,
    /// Period of `beta` holding this crossing; period 0 is the canonical one.
    pub period: i64,
    /// `+1` when `beta` passes upward.
    pub direction: i8,
}

#[derive(Clone, Debug)]
pub struct LiftedDiagram {
    n: usize,
    scale: i64,
    unit: i64,
    translation: Point,
    window: usize,
    period_len: usize,
    beta: Vec<Point>,
    crossings: Vec<Crossing>,
    w_base: Point,
    z_base: Point,
    regions: Vec<(RegionId, Point)>,
    w_region: RegionId,
    z_region: RegionId,
}

impl LiftedDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Common denominator of all coordinates.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Lowest cap height, in scaled units.
    pub fn unit(&self) -> i64 {
        self.unit
    }

    /// Deck translation carrying each period of `beta` to the next.
    pub fn translation(&self) -> Point {
        self.translation
    }

    /// Number of periods computed on each side of the canonical one.
    pub fn window(&self) -> usize {
        self.window
    }

    /// The lifted `beta` over the whole window, as a polyline.
    pub fn beta(&self) -> &[Point] {
        &self.beta
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn period_len(&self) -> usize {
        self.period_len
    }

    /// Index into `beta` of the first vertex of period 0.
    pub fn period_start(&self) -> usize {
        self.window * self.period_len
    }

    /// Generators of the two lattice translations, `(n, 0)` and `(0, 1)`.
    pub fn lattice(&self) -> (Point, Point) {
        (Point::new(self.n as i64 * self.scale, 0), Point::new(0, self.scale))
    }

    pub fn w_base(&self) -> Point {
        self.w_base
    }

    pub fn z_base(&self) -> Point {
        self.z_base
    }

    pub fn w_region(&self) -> RegionId {
        self.w_region
    }

    pub fn z_region(&self) -> RegionId {
        self.z_region
    }

    /// A sample point inside each complementary region.
    pub fn regions(&self) -> &[(RegionId, Point)] {
        &self.regions
    }

    /// Lifts of generator `g` lying on the computed part of `beta`.
    pub fn gen_lifts(&self, g: usize) -> Vec<Point> {
        self.crossings.iter().filter(|c| c.generator == g).map(|c| self.beta[c.vertex]).collect()
    }

    /// Canonical lift of each generator: its crossing on period 0.
    pub fn canonical_crossings(&self) -> Vec<Crossing> {
        let mut out: Vec<Crossing> = self.crossings.iter().filter(|c| c.period == 0).copied().collect();
        out.sort_by_key(|c| c.generator);
        out
    }

    /// Sum of `f(p + lattice translate)` over translates of `base` whose
    /// position lies within the bounding box of `poly` (padded by one cell).
    pub fn sum_over_lattice(&self, poly: &[Point], base: Point, mut f: impl FnMut(Point) -> i64) -> i64 {
        let (lx, ly) = (self.n as i64 * self.scale, self.scale);
        let (x0, x1) = (poly.iter().map(|p| p.x).min().unwrap(), poly.iter().map(|p| p.x).max().unwrap());
        let (y0, y1) = (poly.iter().map(|p| p.y).min().unwrap(), poly.iter().map(|p| p.y).max().unwrap());
        let mut total = 0;
        for a in (x0 - base.x).div_euclid(lx) - 1..=(x1 - base.x).div_euclid(lx) + 1 {
            for b in (y0 - base.y).div_euclid(ly) - 1..=(y1 - base.y).div_euclid(ly) + 1 {
                total += f(Point::new(base.x + a * lx, base.y + b * ly));
            }
        }
        total
    }

    /// Multiplicity of the domain bounded by the closed polygon `poly` at the
    /// torus point whose lifts are translates of `base`.
    pub fn multiplicity(&self, poly: &[Point], base: Point) -> i64 {
        self.sum_over_lattice(poly, base, |p| winding(poly, p))
    }
}

fn cap_levels(caps: &[(i64, i64)], n: i64) -> Vec<i64> {
    caps.iter()
        .map(|&(lo, hi)| {
            let inner = caps
                .iter()
                .flat_map(|&(l, h)| (-3..=3).map(move |k| (l + k * n, h + k * n)))
                .filter(|&(l, h)| lo < l && h < hi)
                .count();
            inner as i64 + 1
        })
        .collect()
}

/// Number of `alpha` lines one period of `beta` spans, minus one.
pub fn period_span(d: &Diagram11) -> usize {
    let layers: Vec<i64> = d.traversal().iter().map(|s| s.layer).collect();
    (layers.iter().max().unwrap() - layers.iter().min().unwrap()) as usize + 1
}

/// Smallest window accepted by [`route`].
pub const MIN_WINDOW: usize = 1;

/// Window the doubling policy starts from.
pub fn initial_window(d: &Diagram11) -> usize {
    period_span(d) + 1
}

/// Route `beta` in the plane over `window` periods on each side of the
/// canonical period.
pub fn route(d: &Diagram11, window: usize) -> Result<LiftedDiagram, CoverError> {
    if window < MIN_WINDOW {
        return Err(CoverError::WindowTooSmall { given: window, needed: MIN_WINDOW });
    }
    let n = d.n() as i64;
    let arcs = d.arcs();
    let shapes: Vec<ArcShape> = arcs.iter().map(arc_shape).collect();
    let bottom: Vec<(i64, i64)> = shapes
        .iter()
        .filter_map(|s| match *s {
            ArcShape::BottomCap { lo, hi } => Some((lo, hi)),
            _ => None,
        })
        .collect();
    let top: Vec<(i64, i64)> = shapes
        .iter()
        .filter_map(|s| match *s {
            ArcShape::TopCap { lo, hi } => Some((lo, hi)),
            _ => None,
        })
        .collect();
    let lb = cap_levels(&bottom, n);
    let lt = cap_levels(&top, n);
    let depth = lb.iter().chain(lt.iter()).copied().max().unwrap_or(1);
    let unit = 2;
    let scale = 6 * (depth + 1);
    let third = scale / 3;

    // per-arc polylines, endpoint 0 first, in layer-0 coordinates
    let polys: Vec<Vec<Point>> = arcs
        .iter()
        .zip(&shapes)
        .map(|(arc, shape)| {
            let [a, b] = *arc;
            let (pa, pb) = (a.pos * scale, b.pos * scale);
            match *shape {
                ArcShape::BottomCap { lo, hi } => {
                    let h = lb[bottom.iter().position(|&c| c == (lo, hi)).unwrap()] * unit;
                    vec![Point::new(pa, 0), Point::new(pa, h), Point::new(pb, h), Point::new(pb, 0)]
                }
                ArcShape::TopCap { lo, hi } => {
                    let h = scale - lt[top.iter().position(|&c| c == (lo, hi)).unwrap()] * unit;
                    vec![Point::new(pa, scale), Point::new(pa, h), Point::new(pb, h), Point::new(pb, scale)]
                }
                ArcShape::Through { .. } => {
                    debug_assert!(a.boundary == Boundary::Bottom);
                    vec![
                        Point::new(pa, 0),
                        Point::new(pa, third),
                        Point::new(pb, 2 * third),
                        Point::new(pb, scale),
                    ]
                }
            }
        })
        .collect();

    let mut period = Vec::new();
    let mut period_cross = Vec::new();
    for step in d.traversal() {
        let mut pts = polys[step.arc].clone();
        if step.reversed {
            pts.reverse();
        }
        let entry = step.entry(arcs);
        let direction = if entry.boundary == Boundary::Bottom { 1 } else { -1 };
        period_cross.push((period.len(), entry.pos.rem_euclid(n) as usize, direction));
        let off = Point::new(step.shift * scale, step.layer * scale);
        period.extend(pts[..pts.len() - 1].iter().map(|&p| p + off));
    }
    let (tx, ty) = d.translation();
    let translation = Point::new(tx * scale, ty * scale);
    let k = window as i64;
    let mut beta = Vec::with_capacity(period.len() * (2 * window + 1) + 1);
    let mut crossings = Vec::new();
    for p in -k..=k {
        let shift = Point::new(translation.x * p, translation.y * p);
        let base = beta.len();
        beta.extend(period.iter().map(|&q| q + shift));
        crossings.extend(period_cross.iter().map(|&(i, g, dir)| Crossing {
            vertex: base + i,
            generator: g,
            period: p,
            direction: dir,
        }));
    }
    // close the last period so every crossing has a following segment
    beta.push(period[0] + Point::new(translation.x * (k + 1), translation.y * (k + 1)));

    let sample = |bp: Basepoint| {
        let dy = if bp.side == Side::Above { unit / 2 } else { -unit / 2 };
        Point::new(bp.gap * scale + scale / 2, dy)
    };
    let regions: Vec<(RegionId, Point)> = d.regions().into_iter().map(|(r, bp)| (r, sample(bp))).collect();
    let lifted = LiftedDiagram {
        n: d.n(),
        scale,
        unit,
        translation,
        window,
        period_len: period.len(),
        beta,
        crossings,
        w_base: sample(d.w()),
        z_base: sample(d.z()),
        regions,
        w_region: d.region_of(d.w()),
        z_region: d.region_of(d.z()),
    };
    debug_assert!(lifted.is_embedded());
    Ok(lifted)
}

impl LiftedDiagram {
    /// Exact check that the computed polyline has no self-intersections.
    pub fn is_embedded(&self) -> bool {
        let segs: Vec<(Point, Point)> = self.beta.windows(2).map(|w| (w[0], w[1])).collect();
        let mut order: Vec<usize> = (0..segs.len()).collect();
        let lo = |s: &(Point, Point)| s.0.x.min(s.1.x);
        let hi = |s: &(Point, Point)| s.0.x.max(s.1.x);
        order.sort_by_key(|&i| lo(&segs[i]));
        for (oi, &i) in order.iter().enumerate() {
            let (a, b) = segs[i];
            for &j in &order[oi + 1..] {
                if lo(&segs[j]) > hi(&segs[i]) {
                    break;
                }
                if i.abs_diff(j) == 1 {
                    // consecutive segments share exactly their common vertex
                    let (c, d) = segs[j];
                    let (shared, other_i, other_j) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    let _ = shared;
                    if cross(other_i - shared, other_j - shared) == 0 && dot(other_i - shared, other_j - shared) > 0 {
                        return false;
                    }
                    continue;
                }
                let (c, d) = segs[j];
                if segments_meet(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }

    /// `beta` meets the lines `y = k` exactly at the recorded crossings.
    pub fn crossings_are_exact(&self) -> bool {
        let s = self.scale;
        let on_line: Vec<usize> = (0..self.beta.len() - 1).filter(|&i| self.beta[i].y.rem_euclid(s) == 0).collect();
        let recorded: Vec<usize> = self.crossings.iter().map(|c| c.vertex).collect();
        if on_line != recorded {
            return false;
        }
        // transversal: neighbours strictly on opposite sides
        self.crossings.iter().all(|c| {
            let v = c.vertex;
            v == 0 || {
                let (a, p, b) = (self.beta[v - 1], self.beta[v], self.beta[v + 1]);
                (a.y - p.y).signum() * (b.y - p.y).signum() == -1 && a.x == p.x && b.x == p.x
            }
        }) && self.beta.windows(2).all(|w| {
            // no segment runs along or strictly across a line
            let (a, b) = (w[0], w[1]);
            let (ya, yb) = (a.y.min(b.y), a.y.max(b.y));
            let first = ya.div_euclid(s) + 1;
            (ya.rem_euclid(s) != 0 || ya != yb) && first * s >= yb
        })
    }
}

/// Render the lifted diagram as a standalone SVG document.
pub fn render_svg(l: &LiftedDiagram, highlights: Option<&[BigonClass]>) -> String {
    let s = l.scale as f64;
    let px = 48.0;
    let beta = &l.beta;
    let xmin = beta.iter().map(|p| p.x).min().unwrap() as f64 / s - 1.0;
    let xmax = beta.iter().map(|p| p.x).max().unwrap() as f64 / s + 1.0;
    let ymin = (beta.iter().map(|p| p.y).min().unwrap() as f64 / s).floor() - 0.5;
    let ymax = (beta.iter().map(|p| p.y).max().unwrap() as f64 / s).ceil() + 0.5;
    let tx = |x: i64| (x as f64 / s - xmin) * px;
    let ty = |y: i64| (ymax - y as f64 / s) * px;
    let (width, height) = ((xmax - xmin) * px, (ymax - ymin) * px);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if let Some(bigons) = highlights {
        for b in bigons {
            let pts: Vec<String> =
                b.geometry.polygon(l).iter().map(|p| format!("{:.2},{:.2}", tx(p.x), ty(p.y))).collect();
            let _ = writeln!(
                out,
                "<polygon class=\"bigon\" points=\"{}\" fill=\"#f2c14e\" fill-opacity=\"0.5\" stroke=\"none\"><title>x{} to x{} (n_w={}, n_z={}, sign={:+})</title></polygon>",
                pts.join(" "),
                b.from,
                b.to,
                b.n_w,
                b.n_z,
                b.sign
            );
        }
    }
    for k in ymin.ceil() as i64..=ymax.floor() as i64 {
        let y = (ymax - k as f64) * px;
        let _ = writeln!(
            out,
            "<line class=\"alpha\" x1=\"0\" y1=\"{y:.2}\" x2=\"{width:.2}\" y2=\"{y:.2}\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>"
        );
    }
    let lat = |base: Point, class: &str, fill: &str, out: &mut String| {
        let (lx, ly) = (l.n as i64 * l.scale, l.scale);
        let x0 = (xmin * s) as i64;
        let x1 = (xmax * s) as i64;
        for a in (x0 - base.x).div_euclid(lx)..=(x1 - base.x).div_euclid(lx) + 1 {
            for b in (ymin.floor() as i64) - 1..=(ymax.ceil() as i64) + 1 {
                let p = Point::new(base.x + a * lx, base.y + b * ly);
                let (cx, cy) = (tx(p.x), ty(p.y));
                if cx < 0.0 || cx > width || cy < 0.0 || cy > height {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "<circle class=\"{class}\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"5\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"0.5\"/>"
                );
            }
        }
    };
    lat(l.w_base, "w", "#dddddd", &mut out);
    lat(l.z_base, "z", "#555555", &mut out);
    let path: Vec<String> = beta.iter().map(|p| format!("{:.2},{:.2}", tx(p.x), ty(p.y))).collect();
    let _ = writeln!(
        out,
        "<polyline class=\"beta\" points=\"{}\" fill=\"none\" stroke=\"#2c3e80\" stroke-width=\"1.5\"/>",
        path.join(" ")
    );
    for c in &l.crossings {
        let p = beta[c.vertex];
        let _ = writeln!(
            out,
            "<circle class=\"generator\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"black\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\">x{}</text>",
            tx(p.x),
            ty(p.y),
            tx(p.x) + 3.0,
            ty(p.y) - 3.0,
            c.generator
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate, Basepoint, DiagramDescription, Endpoint};

    fn unknot() -> Diagram11 {
        validate(&DiagramDescription {
            n: 1,
            arcs: vec![[Endpoint::bottom(0), Endpoint::top(0)]],
            w: Basepoint::below(0),
            z: Basepoint::above(0),
            name: None,
        })
        .unwrap()
    }

    fn finger() -> Diagram11 {
        validate(&DiagramDescription {
            n: 3,
            arcs: vec![
                [Endpoint::bottom(0), Endpoint::bottom(1)],
                [Endpoint::top(1), Endpoint::top(2)],
                [Endpoint::bottom(2), Endpoint::top(0)],
            ],
            w: Basepoint::above(2),
            z: Basepoint::below(2),
            name: None,
        })
        .unwrap()
    }

    #[test]
    fn unknot_is_a_staircase() {
        let l = route(&unknot(), 2).unwrap();
        assert_eq!(l.crossings().len(), 5);
        assert!(l.crossings().iter().all(|c| c.direction == 1));
        assert!(l.is_embedded());
        assert!(l.crossings_are_exact());
    }

    #[test]
    fn single_cap_makes_one_excursion() {
        let l = route(&finger(), 1).unwrap();
        assert!(l.is_embedded());
        assert!(l.crossings_are_exact());
        // per period: up through a line, down across it, up again
        let dirs: Vec<i8> = l.crossings().iter().filter(|c| c.period == 0).map(|c| c.direction).collect();
        assert_eq!(dirs.iter().filter(|&&d| d == -1).count(), 1);
        assert_eq!(dirs.len(), 3);
    }

    #[test]
    fn window_zero_is_rejected() {
        assert_eq!(route(&unknot(), 0).unwrap_err(), CoverError::WindowTooSmall { given: 0, needed: 1 });
    }

    #[test]
    fn winding_of_square() {
        let sq = [Point::new(0, 0), Point::new(2, 0), Point::new(2, 2), Point::new(0, 2)];
        assert_eq!(winding(&sq, Point::new(1, 1)), 1);
        assert_eq!(winding(&sq, Point::new(3, 1)), 0);
        let rev: Vec<Point> = sq.iter().rev().copied().collect();
        assert_eq!(winding(&rev, Point::new(1, 1)), -1);
        assert_eq!(area2(&sq), 8);
    }

    #[test]
    fn basepoints_avoid_beta() {
        let l = route(&finger(), 2).unwrap();
        for base in [l.w_base(), l.z_base()] {
            for w in l.beta().windows(2) {
                for dx in -3..=3 {
                    let p = base + Point::new(dx * 3 * l.scale(), 0);
                    assert!(!on_segment(w[0], w[1], p));
                }
            }
        }
    }

    #[test]
    fn svg_is_deterministic_and_labels_lifts() {
        let l = route(&unknot(), 1).unwrap();
        let a = render_svg(&l, None);
        assert_eq!(a, render_svg(&l, None));
        assert_eq!(a.matches("class=\"generator\"").count(), 3);
        assert!(a.starts_with("<svg"));
    }
}
