//! Vertex polygons: where the offset crease lines of neighboring creases
//! meet around each vertex, as positions affine in the scale `s`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::flat_state::CreaseWidths;
use crate::geometry::{convex_hull, segments_properly_cross, Point2, Polygon2, Tolerance, Vector2};
use crate::pattern::{CreasePattern, EdgeKind, VertexClass, VertexLabel};

/// Solution of the two-offset-line intersection in a wedge of angle `θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolygonVertexSolution {
    pub a: f64,
    pub b: f64,
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub h: f64,
}

impl PolygonVertexSolution {
    /// The intersection point relative to the wedge apex, with the first
    /// side along `d1` (at distance `a` from it).
    pub fn point(&self, d1: Vector2) -> Vector2 {
        d1.rotate(self.alpha) * self.h
    }
}

/// Point at distance `a` from the first side and `b` from the second side
/// of a wedge of angle `theta`.
pub fn polygon_vertex(a: f64, b: f64, theta: f64, tol: &Tolerance) -> Result<PolygonVertexSolution> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InfeasibleSector(format!("half-widths must be positive (got {a}, {b})")));
    }
    if !(theta > 0.0 && theta < 2.0 * PI) {
        return Err(Error::InfeasibleSector(format!("sector angle {theta} outside (0, 2π)")));
    }
    let (alpha, h) = if (theta - PI).abs() <= tol.angle() {
        if (a - b).abs() > tol.eps_abs.max(tol.eps_rel * a.max(b)) {
            return Err(Error::InfeasibleSector(format!(
                "straight sector with unequal half-widths {a} and {b}"
            )));
        }
        (PI / 2.0, a)
    } else {
        let alpha = theta.sin().atan2(b / a + theta.cos());
        (alpha, a / alpha.sin())
    };
    let sol = PolygonVertexSolution {
        a,
        b,
        theta,
        alpha,
        beta: theta - alpha,
        h,
    };
    debug_assert!((sol.h * sol.beta.sin() - b).abs() <= 1e-6 * (1.0 + b));
    Ok(sol)
}

/// Where a polygon vertex comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointSource {
    /// Offset lines of two creases bounding the face's sector.
    Sector { face: usize },
    /// A crease offset line meeting a boundary edge of the face.
    Boundary { face: usize },
    /// The vertex itself, filling the exterior gap.
    Original,
}

/// One polygon vertex at `v + s·offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolygonPoint {
    pub offset: Vector2,
    pub source: PointSource,
}

/// Vertex polygon around `vertex`, affine in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexPolygon {
    pub vertex: usize,
    pub center: Point2,
    /// Sector points in counterclockwise order.
    pub points: Vec<PolygonPoint>,
    /// Hole outline at unit scale, relative to the vertex; counterclockwise
    /// unless degenerate.
    pub outline: Vec<Vector2>,
    pub degenerate: bool,
    /// True once the outline was replaced by a convex hull.
    pub clipped: bool,
}

impl VertexPolygon {
    /// Sector point of `face` at unit scale (before any clipping).
    pub fn sector_offset(&self, face: usize) -> Option<Vector2> {
        self.points.iter().find_map(|p| match p.source {
            PointSource::Sector { face: f } | PointSource::Boundary { face: f } if f == face => Some(p.offset),
            _ => None,
        })
    }

    /// Hole outline at scale `s`.
    pub fn at(&self, s: f64) -> Polygon2 {
        Polygon2::new(self.outline.iter().map(|&q| self.center + q * s).collect())
    }

    pub fn points_at(&self, s: f64) -> Vec<Point2> {
        self.points.iter().map(|p| self.center + p.offset * s).collect()
    }
}

/// Half-width of the crease on edge `e`, zero for a boundary edge.
fn half_width(cp: &CreasePattern, widths: &CreaseWidths, e: usize) -> f64 {
    match cp.edge(e).kind {
        EdgeKind::Crease => 0.5 * widths.get(e),
        EdgeKind::Boundary => 0.0,
    }
}

/// Builds the polygon of one vertex; `None` when no crease meets it.
pub fn build_vertex_polygon(
    cp: &CreasePattern,
    v: usize,
    widths: &CreaseWidths,
    vc: &VertexClass,
    tol: &Tolerance,
) -> Result<Option<VertexPolygon>> {
    let sectors = cp.sectors(v);
    if !sectors.iter().any(|s| cp.edge(s.start_edge).kind == EdgeKind::Crease) {
        return Ok(None);
    }
    let mut points = Vec::with_capacity(sectors.len() + 1);
    for s in &sectors {
        let Some(face) = s.face else {
            points.push(PolygonPoint {
                offset: Point2::ZERO,
                source: PointSource::Original,
            });
            continue;
        };
        let (a, b) = (half_width(cp, widths, s.start_edge), half_width(cp, widths, s.end_edge));
        let point = if a > 0.0 && b > 0.0 {
            PolygonPoint {
                offset: polygon_vertex(a, b, s.angle, tol)?.point(s.start_dir),
                source: PointSource::Sector { face },
            }
        } else {
            // offset line of the crease side meeting the boundary side
            let sin = s.angle.sin();
            if sin <= tol.angle() {
                return Err(Error::InfeasibleSector(format!(
                    "vertex {v}: face {face} has a straight corner on the boundary"
                )));
            }
            PolygonPoint {
                offset: (s.start_dir * b + s.end_dir * a) * (1.0 / sin),
                source: PointSource::Boundary { face },
            }
        };
        points.push(point);
    }
    if vc.labels[v] == VertexLabel::Interior && points.iter().any(|p| p.source == PointSource::Original) {
        return Err(Error::Invariant(format!("interior vertex {v} has an exterior sector")));
    }
    let mut poly = VertexPolygon {
        vertex: v,
        center: cp.vertex(v),
        outline: points.iter().map(|p| p.offset).collect(),
        points,
        degenerate: false,
        clipped: false,
    };
    let area = Polygon2::new(poly.outline.clone()).signed_area();
    let scale = poly.outline.iter().map(|q| q.norm()).fold(0.0, f64::max).max(1.0);
    poly.degenerate = area.abs() <= tol.eps_abs * scale * scale;
    Ok(Some(poly))
}

/// True when two non-adjacent sides of the cycle properly cross.
pub fn has_self_crossing(pts: &[Point2], tol: &Tolerance) -> bool {
    let n = pts.len();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if segments_properly_cross(a, b, c, d, tol) {
                return true;
            }
        }
    }
    false
}

/// Replaces a self-crossing or inverted outline by the convex hull of its
/// points, adding the vertex itself when an interior vertex would otherwise
/// lie outside. Degenerate outlines and simple counterclockwise ones that
/// surround their vertex are kept.
pub fn clip_vertex_polygon(p: &VertexPolygon, tol: &Tolerance) -> VertexPolygon {
    if p.degenerate {
        return p.clone();
    }
    let poly = Polygon2::new(p.outline.clone());
    let inverted = poly.signed_area() < 0.0;
    let reflex = poly.reflex_corner(tol).is_some();
    let interior = p.points.iter().all(|q| q.source != PointSource::Original);
    let outside = interior && !poly.contains(Point2::ZERO, tol);
    if !inverted && !reflex && !outside && !has_self_crossing(&p.outline, tol) {
        return p.clone();
    }
    let mut pts = p.outline.clone();
    if interior && !convex_hull(&pts, tol).polygon.contains(Point2::ZERO, tol) {
        pts.push(Point2::ZERO);
    }
    let hull = convex_hull(&pts, tol);
    VertexPolygon {
        outline: hull.polygon.vertices,
        degenerate: hull.degenerate,
        clipped: true,
        ..p.clone()
    }
}
