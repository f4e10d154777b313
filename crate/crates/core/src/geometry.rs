//! Planar primitives: points, tolerant predicates, convex hulls, halfplane
//! clipping and polygon overlap classification.
//!
//! Every boolean operation here clips against convex regions only. The
//! clip regions the thickening pipeline needs (faces, strips, hulls) are all
//! convex; general non-convex inputs are accepted by [`region_intersect`]
//! through an ear-clipping split.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute and relative tolerances shared by every predicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_abs: 1e-9,
            eps_rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        if !(eps_abs > 0.0 && eps_rel > 0.0 && eps_abs.is_finite() && eps_rel.is_finite()) {
            return Err(Error::Config(format!(
                "tolerances must be positive and finite (got {eps_abs}, {eps_rel})"
            )));
        }
        Ok(Tolerance { eps_abs, eps_rel })
    }

    pub fn with_abs(eps_abs: f64) -> Result<Self> {
        Self::new(eps_abs, Tolerance::default().eps_rel)
    }

    /// Angular tolerance in radians.
    pub fn angle(&self) -> f64 {
        self.eps_abs.max(self.eps_rel)
    }
}

/// A point (or vector) in the pattern plane.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

pub type Vector2 = Point2;

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Point2 {
    pub const ZERO: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        Point2::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        Point2::new(self.x / n, self.y / n)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

fn cross3(p: Point2, q: Point2, r: Point2) -> f64 {
    (q - p).cross(r - p)
}

/// Orientation of the triangle `p, q, r`: `+1` for a left turn, `-1` for a
/// right turn, `0` when twice the signed area is within `eps_abs`.
pub fn orient(p: Point2, q: Point2, r: Point2, tol: &Tolerance) -> i8 {
    let a = cross3(p, q, r);
    if a.abs() <= tol.eps_abs {
        0
    } else if a > 0.0 {
        1
    } else {
        -1
    }
}

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let t = std::f64::consts::TAU;
    let r = a.rem_euclid(t);
    if r >= t {
        0.0
    } else {
        r
    }
}

/// Counterclockwise angle from direction `from` to direction `to`, in `(0, 2π]`.
pub fn ccw_angle(from: Vector2, to: Vector2) -> f64 {
    let a = normalize_angle(to.angle() - from.angle());
    if a == 0.0 {
        std::f64::consts::TAU
    } else {
        a
    }
}

/// Closed halfplane `normal · x >= offset` with a unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub normal: Vector2,
    pub offset: f64,
}

impl HalfPlane {
    /// Halfplane bounded by the line through `point` along `dir`. `keep_side`
    /// `+1` keeps the left side of the directed line, `-1` the right side.
    pub fn from_line(point: Point2, dir: Vector2, keep_side: i8) -> Self {
        let n = dir.normalized().perp();
        let n = if keep_side >= 0 { n } else { -n };
        HalfPlane {
            normal: n,
            offset: n.dot(point),
        }
    }

    /// Signed distance, positive inside.
    pub fn eval(&self, p: Point2) -> f64 {
        self.normal.dot(p) - self.offset
    }

    pub fn flipped(&self) -> HalfPlane {
        HalfPlane {
            normal: -self.normal,
            offset: -self.offset,
        }
    }
}

/// Simple polygon, counterclockwise when it has positive area.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon2 {
    pub vertices: Vec<Point2>,
}

impl Polygon2 {
    pub fn new(vertices: Vec<Point2>) -> Self {
        Polygon2 { vertices }
    }

    pub fn empty() -> Self {
        Polygon2::default()
    }

    /// Drops consecutive vertices closer than `eps`.
    pub fn cleaned(mut self, eps: f64) -> Self {
        let mut out: Vec<Point2> = Vec::with_capacity(self.vertices.len());
        for p in self.vertices.drain(..) {
            if out.last().is_none_or(|q| q.dist(p) > eps) {
                out.push(p);
            }
        }
        while out.len() > 1 && out[0].dist(out[out.len() - 1]) <= eps {
            out.pop();
        }
        Polygon2 { vertices: out }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| a.cross(b)).sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn reversed(&self) -> Polygon2 {
        let mut v = self.vertices.clone();
        v.reverse();
        Polygon2 { vertices: v }
    }

    pub fn to_ccw(&self) -> Polygon2 {
        if self.signed_area() < 0.0 {
            self.reversed()
        } else {
            self.clone()
        }
    }

    pub fn centroid(&self) -> Point2 {
        let a = self.signed_area();
        if a.abs() < 1e-300 {
            let n = self.vertices.len().max(1) as f64;
            let s = self
                .vertices
                .iter()
                .fold(Point2::ZERO, |acc, &p| acc + p);
            return s * (1.0 / n);
        }
        let mut c = Point2::ZERO;
        for (p, q) in self.edges() {
            let k = p.cross(q);
            c = c + (p + q) * k;
        }
        c * (1.0 / (6.0 * a))
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Convex (weakly) and counterclockwise.
    pub fn is_convex(&self, tol: &Tolerance) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            orient(a, b, c, tol) >= 0
        }) && self.signed_area() > 0.0
    }

    /// Index of the first reflex corner, for a counterclockwise polygon.
    pub fn reflex_corner(&self, tol: &Tolerance) -> Option<usize> {
        let n = self.vertices.len();
        (0..n).find(|&i| {
            let a = self.vertices[(i + n - 1) % n];
            let b = self.vertices[i];
            let c = self.vertices[(i + 1) % n];
            orient(a, b, c, tol) < 0
        })
    }

    /// True if no two non-adjacent edges meet and no adjacent edges overlap.
    pub fn is_simple(&self, tol: &Tolerance) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return true;
        }
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            for j in i + 1..n {
                let (c, d) = (self.vertices[j], self.vertices[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // folding back onto the previous edge
                    let shared = if j == i + 1 { b } else { a };
                    let other_a = if j == i + 1 { a } else { b };
                    let other_b = if j == i + 1 { d } else { c };
                    if orient(other_a, shared, other_b, tol) == 0
                        && (other_a - shared).dot(other_b - shared) > 0.0
                    {
                        return false;
                    }
                    continue;
                }
                if segment_distance(a, b, c, d) <= tol.eps_abs {
                    return false;
                }
            }
        }
        true
    }

    /// Point-in-polygon with the boundary counting as inside.
    pub fn contains(&self, p: Point2, tol: &Tolerance) -> bool {
        if self
            .edges()
            .any(|(a, b)| point_segment_distance(p, a, b) <= tol.eps_abs)
        {
            return true;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x > p.x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn translated(&self, d: Vector2) -> Polygon2 {
        Polygon2::new(self.vertices.iter().map(|&p| p + d).collect())
    }
}

/// Result of [`convex_hull`]: a counterclockwise polygon, or a segment/point
/// flagged as degenerate when the input is collinear.
#[derive(Clone, Debug, PartialEq)]
pub struct Hull {
    pub polygon: Polygon2,
    pub degenerate: bool,
}

/// Andrew's monotone chain; collinear boundary points are dropped.
pub fn convex_hull(points: &[Point2], tol: &Tolerance) -> Hull {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.dist(*b) <= tol.eps_abs);
    if pts.len() < 3 {
        return Hull {
            polygon: Polygon2::new(pts),
            degenerate: true,
        };
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p, tol) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p, tol) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // collinear: report the extreme pair
        let a = pts[0];
        let b = pts[pts.len() - 1];
        return Hull {
            polygon: Polygon2::new(vec![a, b]),
            degenerate: true,
        };
    }
    Hull {
        polygon: Polygon2::new(lower),
        degenerate: false,
    }
}

/// Sutherland–Hodgman clip of `p` against one halfplane. Points within
/// `eps_abs` of the boundary are kept.
pub fn clip_halfplane(p: &Polygon2, h: &HalfPlane, tol: &Tolerance) -> Polygon2 {
    let n = p.vertices.len();
    if n == 0 {
        return Polygon2::empty();
    }
    let eps = tol.eps_abs;
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let a = p.vertices[i];
        let b = p.vertices[(i + 1) % n];
        let da = h.eval(a);
        let db = h.eval(b);
        if da >= -eps {
            out.push(a);
        }
        if (da > eps && db < -eps) || (da < -eps && db > eps) {
            let t = da / (da - db);
            out.push(a.lerp(b, t));
        }
    }
    let poly = Polygon2::new(out).cleaned(eps);
    if poly.len() < 3 {
        return Polygon2::empty();
    }
    poly
}

/// The part of `p` on the kept closed side of the line through `point`
/// along `dir` (`keep_side` `+1` = left).
pub fn clip_to_halfplane(
    p: &Polygon2,
    point: Point2,
    dir: Vector2,
    keep_side: i8,
    tol: &Tolerance,
) -> Polygon2 {
    clip_halfplane(p, &HalfPlane::from_line(point, dir, keep_side), tol)
}

/// Halfplanes whose intersection is the convex counterclockwise polygon `q`.
pub fn convex_halfplanes(q: &Polygon2) -> Vec<HalfPlane> {
    q.edges()
        .filter(|(a, b)| a.dist(*b) > 0.0)
        .map(|(a, b)| HalfPlane::from_line(a, b - a, 1))
        .collect()
}

/// Intersection of `p` with the convex counterclockwise polygon `q`.
pub fn clip_convex(p: &Polygon2, q: &Polygon2, tol: &Tolerance) -> Polygon2 {
    let mut r = p.clone();
    for h in convex_halfplanes(q) {
        r = clip_halfplane(&r, &h, tol);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Area of the intersection of two convex polygons (any orientation).
pub fn convex_overlap_area(p: &Polygon2, q: &Polygon2, tol: &Tolerance) -> f64 {
    if p.len() < 3 || q.len() < 3 {
        return 0.0;
    }
    let (plo, phi) = p.bbox();
    let (qlo, qhi) = q.bbox();
    if plo.x > qhi.x || qlo.x > phi.x || plo.y > qhi.y || qlo.y > phi.y {
        return 0.0;
    }
    clip_convex(&p.to_ccw(), &q.to_ccw(), tol).area()
}

/// Distance from `p` to segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let l2 = ab.dot(ab);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / l2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Distance between segments `ab` and `cd` (zero when they cross).
pub fn segment_distance(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    let d1 = cross3(a, b, c);
    let d2 = cross3(a, b, d);
    let d3 = cross3(c, d, a);
    let d4 = cross3(c, d, b);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// True when the open segments `ab` and `cd` cross at a single interior point.
pub fn segments_properly_cross(a: Point2, b: Point2, c: Point2, d: Point2, tol: &Tolerance) -> bool {
    let o1 = orient(a, b, c, tol);
    let o2 = orient(a, b, d, tol);
    let o3 = orient(c, d, a, tol);
    let o4 = orient(c, d, b, tol);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Distance between two polygons' boundaries-or-interiors (zero if they meet).
pub fn polygon_distance(p: &Polygon2, q: &Polygon2, tol: &Tolerance) -> f64 {
    if p.vertices.iter().any(|&v| q.contains(v, tol)) || q.vertices.iter().any(|&v| p.contains(v, tol)) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for (a, b) in p.edges() {
        for (c, d) in q.edges() {
            best = best.min(segment_distance(a, b, c, d));
        }
    }
    best
}

/// Whether segment `cd` meets the relative interior of segment `ab`.
pub fn segment_touches_interior(a: Point2, b: Point2, c: Point2, d: Point2, tol: &Tolerance) -> bool {
    let len = a.dist(b);
    if len <= tol.eps_abs {
        return false;
    }
    let u = (b - a) * (1.0 / len);
    // clip cd to the slab eps < (x - a)·u < len - eps
    let (sc, sd) = ((c - a).dot(u), (d - a).dot(u));
    let (lo, hi) = (tol.eps_abs, len - tol.eps_abs);
    let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
    let ds = sd - sc;
    if ds.abs() < 1e-300 {
        if sc <= lo || sc >= hi {
            return false;
        }
    } else {
        let (ta, tb) = ((lo - sc) / ds, (hi - sc) / ds);
        t0 = t0.max(ta.min(tb));
        t1 = t1.min(ta.max(tb));
        if t1 < t0 {
            return false;
        }
    }
    let (c2, d2) = (c.lerp(d, t0), c.lerp(d, t1));
    segment_distance(a, b, c2, d2) <= tol.eps_abs
}

/// Length of the part of segment `ab` lying in the open interior of the
/// convex counterclockwise polygon `q`, shrunk by `eps_abs` from its boundary.
pub fn segment_interior_length(a: Point2, b: Point2, q: &Polygon2, tol: &Tolerance) -> f64 {
    let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
    let d = b - a;
    for h in convex_halfplanes(q) {
        // require h.eval > eps strictly inside
        let fa = h.eval(a) - tol.eps_abs;
        let fd = h.normal.dot(d);
        if fd.abs() < 1e-300 {
            if fa <= 0.0 {
                return 0.0;
            }
            continue;
        }
        let t = -fa / fd;
        if fd > 0.0 {
            t0 = t0.max(t);
        } else {
            t1 = t1.min(t);
        }
        if t1 <= t0 {
            return 0.0;
        }
    }
    (t1 - t0).max(0.0) * d.norm()
}

/// Classification returned by [`region_intersect`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Intersection {
    Disjoint,
    Touching,
    Overlapping(f64),
}

/// Ear-clipping triangulation of a simple counterclockwise polygon.
fn triangulate(p: &Polygon2) -> Vec<Polygon2> {
    let mut idx: Vec<usize> = (0..p.len()).collect();
    let v = &p.vertices;
    let mut tris = Vec::new();
    let mut guard = 0;
    while idx.len() > 3 && guard < 10 * p.len() * p.len() {
        guard += 1;
        let n = idx.len();
        let mut clipped = false;
        for i in 0..n {
            let (ia, ib, ic) = (idx[(i + n - 1) % n], idx[i], idx[(i + 1) % n]);
            if cross3(v[ia], v[ib], v[ic]) <= 0.0 {
                continue;
            }
            let tri = Polygon2::new(vec![v[ia], v[ib], v[ic]]);
            let blocked = idx.iter().any(|&k| {
                let q = v[k];
                q != v[ia] && q != v[ib] && q != v[ic] && {
                    cross3(v[ia], v[ib], q) >= 0.0 && cross3(v[ib], v[ic], q) >= 0.0 && cross3(v[ic], v[ia], q) >= 0.0
                }
            });
            if !blocked {
                tris.push(tri);
                idx.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            // collinear leftovers
            idx.remove(0);
        }
    }
    if idx.len() == 3 {
        let t = Polygon2::new(idx.iter().map(|&k| v[k]).collect());
        if t.signed_area() > 0.0 {
            tris.push(t);
        }
    }
    tris
}

/// Classifies two simple polygons as disjoint, touching (boundaries meet but
/// the overlap area is within `eps_abs`) or overlapping with the shared area.
pub fn region_intersect(p: &Polygon2, q: &Polygon2, tol: &Tolerance) -> Result<Intersection> {
    if !p.is_simple(tol) || !q.is_simple(tol) {
        return Err(Error::SelfIntersectingPolygon);
    }
    let p = p.to_ccw();
    let q = q.to_ccw();
    let area = if q.is_convex(tol) {
        if p.len() < 3 {
            0.0
        } else {
            clip_convex(&p, &q, tol).area()
        }
    } else if p.is_convex(tol) {
        clip_convex(&q, &p, tol).area()
    } else {
        triangulate(&p)
            .iter()
            .map(|t| clip_convex(&q, t, tol).area())
            .sum()
    };
    if area > tol.eps_abs {
        return Ok(Intersection::Overlapping(area));
    }
    if polygon_distance(&p, &q, tol) <= tol.eps_abs {
        Ok(Intersection::Touching)
    } else {
        Ok(Intersection::Disjoint)
    }
}

/// Intersection point of the lines `p + t·d` and `q + u·e`, if not parallel.
pub fn line_intersection(p: Point2, d: Vector2, q: Point2, e: Vector2) -> Option<Point2> {
    let den = d.cross(e);
    if den.abs() < 1e-15 * d.norm() * e.norm() {
        return None;
    }
    let t = (q - p).cross(e) / den;
    Some(p + d * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x0: f64, y0: f64, x1: f64, y1: f64) -> Polygon2 {
        Polygon2::new(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn orient_examples() {
        let t = Tolerance::default();
        assert_eq!(orient(p(0., 0.), p(1., 0.), p(0., 1.), &t), 1);
        assert_eq!(orient(p(0., 0.), p(1., 0.), p(2., 0.), &t), 0);
        assert_eq!(orient(p(0., 0.), p(0., 1.), p(1., 0.), &t), -1);
    }

    #[test]
    fn hull_examples() {
        let t = Tolerance::default();
        let h = convex_hull(
            &[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.), p(0.5, 0.5)],
            &t,
        );
        assert!(!h.degenerate);
        assert_eq!(h.polygon.len(), 4);
        assert!(!h.polygon.vertices.contains(&p(0.5, 0.5)));

        let quad = [p(0.5, -0.5), p(1.5, 0.5), p(1.5, 1.5), p(0.5, 2.5)];
        let h = convex_hull(&quad, &t);
        assert_eq!(h.polygon.len(), 4);
        for q in quad {
            assert!(h.polygon.vertices.contains(&q));
        }
        let v = &h.polygon.vertices;
        for i in 0..4 {
            assert!((v[(i + 1) % 4] - v[i]).cross(v[(i + 2) % 4] - v[(i + 1) % 4]) >= 0.0);
        }

        let h = convex_hull(&[p(0., 0.), p(1., 1.), p(2., 2.)], &t);
        assert!(h.degenerate);
        assert_eq!(h.polygon.vertices, vec![p(0., 0.), p(2., 2.)]);
    }

    #[test]
    fn region_intersect_examples() {
        let t = Tolerance::default();
        let a = sq(0., 0., 1., 1.);
        assert_eq!(region_intersect(&a, &sq(2., 0., 3., 1.), &t).unwrap(), Intersection::Disjoint);
        assert_eq!(region_intersect(&a, &sq(1., 0., 2., 1.), &t).unwrap(), Intersection::Touching);
        match region_intersect(&a, &sq(0.5, 0., 1.5, 1.), &t).unwrap() {
            Intersection::Overlapping(x) => assert!((x - 0.5).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn region_intersect_rejects_bowtie() {
        let t = Tolerance::default();
        let bow = Polygon2::new(vec![p(0., 0.), p(1., 1.), p(1., 0.), p(0., 1.)]);
        assert!(region_intersect(&bow, &sq(0., 0., 1., 1.), &t).is_err());
    }

    #[test]
    fn region_intersect_nonconvex() {
        let t = Tolerance::default();
        // L shape, area 3
        let l = Polygon2::new(vec![p(0., 0.), p(2., 0.), p(2., 1.), p(1., 1.), p(1., 2.), p(0., 2.)]);
        let l2 = l.translated(p(0.5, 0.5));
        // brute-force grid estimate of the overlap
        let n = 400;
        let mut hits = 0;
        for i in 0..n {
            for j in 0..n {
                let q = p(3.0 * (i as f64 + 0.5) / n as f64, 3.0 * (j as f64 + 0.5) / n as f64);
                if l.contains(q, &t) && l2.contains(q, &t) {
                    hits += 1;
                }
            }
        }
        let est = hits as f64 * 9.0 / (n * n) as f64;
        match region_intersect(&l, &l2, &t).unwrap() {
            Intersection::Overlapping(x) => assert!((x - est).abs() < 0.02, "{x} vs {est}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn clip_examples() {
        let t = Tolerance::default();
        let a = sq(0., 0., 1., 1.);
        let c = clip_to_halfplane(&a, p(0.5, 0.), p(0., 1.), 1, &t);
        assert!((c.area() - 0.5).abs() < 1e-12);
        let (lo, hi) = c.bbox();
        assert_eq!((lo, hi), (p(0., 0.), p(0.5, 1.)));
        let c = clip_to_halfplane(&a, p(2., 0.), p(0., 1.), 1, &t);
        assert!((c.area() - 1.0).abs() < 1e-12);
        let c = clip_to_halfplane(&a, p(0., 0.), p(0., 1.), 1, &t);
        assert!(c.area() < 1e-12);
    }

    #[test]
    fn segment_interior_length_cases() {
        let t = Tolerance::default();
        let a = sq(0., 0., 2., 1.);
        assert!((segment_interior_length(p(1., -1.), p(1., 2.), &a, &t) - 1.0).abs() < 1e-8);
        // along the boundary
        assert_eq!(segment_interior_length(p(0., 0.), p(2., 0.), &a, &t), 0.0);
    }
}
