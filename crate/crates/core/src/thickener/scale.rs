//! Upper bound on the scale: strips must keep positive length between their
//! vertex polygons, every reduced face must keep positive area and no two
//! vertex polygons may overlap.

use crate::geometry::{Tolerance, Vector2};
use crate::pattern::CreasePattern;

use super::{AffinePlane, Construction, RegionKey, VertexPolygon};

/// Shortening of one strip side: its length at scale `s` is
/// `length - s·shrink`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleConstraint {
    pub crease: usize,
    pub side: usize,
    pub face: usize,
    pub length: f64,
    pub shrink: f64,
    /// `length / shrink` when the strip shortens at all.
    pub limit: Option<f64>,
}

impl ScaleConstraint {
    pub fn length_at(&self, s: f64) -> f64 {
        self.length - s * self.shrink
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaleBound {
    pub s_star: f64,
    /// Smallest strip limit (infinite when no strip shortens).
    pub strip_limit: f64,
    /// Largest scale keeping every reduced face nonempty.
    pub face_limit: f64,
    /// Largest scale at which vertex polygons at most touch.
    pub contact_limit: f64,
    pub constraints: Vec<ScaleConstraint>,
}

impl ScaleBound {
    /// Strip sides whose limit equals `s_star`.
    pub fn binding(&self) -> Vec<&ScaleConstraint> {
        self.constraints
            .iter()
            .filter(|c| c.limit.is_some_and(|l| (l - self.s_star).abs() <= 1e-9 * self.s_star.max(1.0)))
            .collect()
    }
}

/// Largest `s >= 0` for which `n·x >= c0 + s·c1` holds for some `x` and all
/// planes, by enumerating vertices of the 3D feasible set.
fn max_feasible_scale(planes: &[AffinePlane], tol: &Tolerance) -> f64 {
    if planes.iter().all(|p| p.c1 <= 0.0) {
        return f64::INFINITY;
    }
    let scale = planes.iter().map(|p| p.c0.abs()).fold(1.0, f64::max);
    let eps = tol.eps_abs.max(tol.eps_rel * scale);
    let m = planes.len();
    let mut best = f64::NEG_INFINITY;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let rows = [planes[i], planes[j], planes[k]];
                // n·x - c1·s = c0
                let a: Vec<[f64; 3]> = rows.iter().map(|p| [p.normal.x, p.normal.y, -p.c1]).collect();
                let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                    - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                    + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
                if det.abs() < 1e-12 {
                    continue;
                }
                let b = [rows[0].c0, rows[1].c0, rows[2].c0];
                let col = |c: usize| {
                    let mut m2 = a.clone();
                    for r in 0..3 {
                        m2[r][c] = b[r];
                    }
                    m2[0][0] * (m2[1][1] * m2[2][2] - m2[1][2] * m2[2][1])
                        - m2[0][1] * (m2[1][0] * m2[2][2] - m2[1][2] * m2[2][0])
                        + m2[0][2] * (m2[1][0] * m2[2][1] - m2[1][1] * m2[2][0])
                };
                let (x, y, s) = (col(0) / det, col(1) / det, col(2) / det);
                let p = crate::geometry::Point2::new(x, y);
                if s > best && planes.iter().all(|q| q.normal.dot(p) - q.c0 - s * q.c1 >= -eps) {
                    best = s;
                }
            }
        }
    }
    best.max(0.0)
}

/// Largest `s` keeping `a + s·P` and `b + s·Q` interior-disjoint. Both
/// shapes scale about fixed centers, so once separated along an edge normal
/// they stay separated for all smaller `s`.
fn contact_scale(a: &VertexPolygon, b: &VertexPolygon) -> f64 {
    let d = b.center - a.center;
    let normals = |o: &[Vector2]| -> Vec<Vector2> {
        (0..o.len())
            .map(|i| (o[(i + 1) % o.len()] - o[i]).perp())
            .filter(|n| n.norm() > 0.0)
            .collect()
    };
    let span = |o: &[Vector2], n: Vector2| {
        o.iter()
            .map(|q| q.dot(n))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
    };
    // each axis separates on (0, σ] or on [τ, ∞)
    let mut low: f64 = 0.0;
    let mut high = f64::INFINITY;
    for n in normals(&a.outline).into_iter().chain(normals(&b.outline)) {
        let (pa, qa) = span(&a.outline, n);
        let (pb, qb) = span(&b.outline, n);
        let gap = d.dot(n);
        // b lies beyond a along n while gap >= s·(qa - pb), and before it
        // while gap <= s·(pa - qb)
        for (k, g) in [(qa - pb, gap), (qb - pa, -gap)] {
            if k > 0.0 && g >= 0.0 {
                low = low.max(g / k);
            } else if k < 0.0 && g < 0.0 {
                high = high.min(g / k);
            } else if k == 0.0 && g >= 0.0 || k < 0.0 {
                return f64::INFINITY;
            }
        }
    }
    if high <= low { f64::INFINITY } else { low }
}

fn contact_limit(c: &Construction) -> f64 {
    let polys: Vec<&VertexPolygon> = c.polygons.iter().flatten().filter(|p| !p.degenerate).collect();
    let mut limit = f64::INFINITY;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            limit = limit.min(contact_scale(polys[i], polys[j]));
        }
    }
    limit
}

/// Face edges as planes independent of `s`, plus the face's own planes.
fn face_constraints(cp: &CreasePattern, c: &Construction, f: usize) -> Vec<AffinePlane> {
    let poly = cp.face_polygon(f);
    let mut planes: Vec<AffinePlane> = poly
        .edges()
        .map(|(a, b)| AffinePlane::through(a, crate::geometry::Point2::ZERO, (b - a).perp()))
        .collect();
    planes.extend(c.faces[f].planes.iter().copied());
    planes
}

pub fn scale_upper_bound(cp: &CreasePattern, c: &Construction, tol: &Tolerance) -> ScaleBound {
    let mut constraints = Vec::new();
    for plan in &c.strips {
        let RegionKey::Strip { crease, side } = plan.key else {
            continue;
        };
        let [v0, v1] = cp.edge(crease).v;
        let (p0, p1) = cp.segment(crease);
        let length = p0.dist(p1);
        let u = (p1 - p0) * (1.0 / length);
        let mut shrink = 0.0;
        for (v, along) in [(v0, u), (v1, -u)] {
            if let Some(q) = c.polygons[v].as_ref().and_then(|p| p.sector_offset(plan.face)) {
                shrink += q.dot(along);
            }
        }
        constraints.push(ScaleConstraint {
            crease,
            side,
            face: plan.face,
            length,
            shrink,
            limit: (shrink > tol.eps_rel).then(|| length / shrink),
        });
    }
    let strip_limit = constraints
        .iter()
        .filter_map(|c| c.limit)
        .fold(f64::INFINITY, f64::min);
    let face_limit = (0..cp.face_count())
        .map(|f| max_feasible_scale(&face_constraints(cp, c, f), tol))
        .fold(f64::INFINITY, f64::min);
    let contact_limit = contact_limit(c);
    ScaleBound {
        s_star: strip_limit.min(face_limit).min(contact_limit),
        strip_limit,
        face_limit,
        contact_limit,
        constraints,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat_state::CreaseWidths;
    use crate::pattern::EdgeKind;
    use crate::samples;
    use crate::thickener::construct;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn widths(cp: &CreasePattern, f: impl Fn(usize) -> f64) -> CreaseWidths {
        CreaseWidths(
            (0..cp.edges().len())
                .map(|e| if cp.edge(e).kind == EdgeKind::Crease { f(e) } else { 0.0 })
                .collect(),
        )
    }

    #[test]
    fn four_vertex_bound() {
        let doc = samples::four_vertex();
        let cp = &doc.pattern;
        let da = cp.find_edge(7, 8).unwrap();
        let c = construct(cp, &widths(cp, |e| if e == da { 3.0 } else { 1.0 }), &tol()).unwrap();
        let b = scale_upper_bound(cp, &c, &tol());
        assert!((b.s_star - 2.0 / 3.0).abs() < 1e-12, "{b:?}");
        // the binding sides are the ones next to the wide crease's 1.5 offsets
        let ab = cp.find_edge(1, 8).unwrap();
        let cd = cp.find_edge(5, 8).unwrap();
        let mut bind: Vec<(usize, usize)> = b.binding().iter().map(|c| (c.crease, c.face)).collect();
        bind.sort();
        assert_eq!(bind, [(ab, 0), (cd, 3)]);
    }

    #[test]
    fn half_positivity_cap() {
        let doc = samples::half();
        let cp = &doc.pattern;
        let c = construct(cp, &widths(cp, |_| 1.0), &tol()).unwrap();
        let b = scale_upper_bound(cp, &c, &tol());
        assert!(b.strip_limit.is_infinite());
        assert!(b.constraints.iter().all(|c| c.shrink <= 0.0));
        assert!((b.face_limit - 1.0).abs() < 1e-12);
        assert_eq!(b.s_star, b.face_limit);
    }

    #[test]
    fn symmetric_vertex_strip_limit() {
        // symmetric degree-4 vertex with unit creases meeting the boundary
        // square-on: each side loses 0.5 per unit s at the interior end only
        let doc = samples::four_vertex();
        let cp = &doc.pattern;
        let c = construct(cp, &widths(cp, |_| 1.0), &tol()).unwrap();
        let b = scale_upper_bound(cp, &c, &tol());
        for k in &b.constraints {
            assert!((k.shrink - 0.5).abs() < 1e-12);
            assert!((k.limit.unwrap() - 2.0).abs() < 1e-12);
        }
        assert!(b.s_star <= 2.0 + 1e-12);
    }

    #[test]
    fn face_limit_matches_area_sweep() {
        let doc = samples::four_vertex();
        let cp = &doc.pattern;
        let c = construct(cp, &widths(cp, |e| 1.0 + e as f64 * 0.1), &tol()).unwrap();
        let b = scale_upper_bound(cp, &c, &tol());
        // bisection on the sign of the smallest reduced-face area
        let min_area = |s: f64| (0..4).map(|f| c.faces[f].at(cp, s, &tol()).area()).fold(f64::INFINITY, f64::min);
        let (mut lo, mut hi) = (0.0, 10.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if min_area(mid) > 1e-12 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((b.face_limit - lo).abs() < 1e-5, "{} vs {lo}", b.face_limit);
    }

    #[test]
    fn vertex_polygons_stop_at_contact() {
        // a wide crease next to a thin sector: the center's polygon and the
        // far end's polygon collide before any strip closes
        let doc = samples::single_vertex(&[20.0, 142.8, 160.0, 37.2], &[0, 1, 2, 3]);
        let cp = &doc.pattern;
        let wide = cp.find_edge(0, 3).unwrap();
        let c = construct(cp, &widths(cp, |e| if e == wide { 2.96 } else { 0.2 }), &tol()).unwrap();
        let b = scale_upper_bound(cp, &c, &tol());
        assert!(b.contact_limit < b.strip_limit.min(b.face_limit));
        assert_eq!(b.s_star, b.contact_limit);
        let (p, q) = (c.polygons[0].as_ref().unwrap(), c.polygons[3].as_ref().unwrap());
        let a = |s: f64| crate::geometry::convex_overlap_area(&p.at(s), &q.at(s), &tol());
        assert!(a(b.s_star) < 1e-12);
        assert!(a(b.s_star * 1.01) > 1e-9);
    }

    #[test]
    fn contact_does_not_bind_on_plain_vertices() {
        let doc = samples::four_vertex();
        let cp = &doc.pattern;
        let c = construct(cp, &widths(cp, |_| 1.0), &tol()).unwrap();
        let b = scale_upper_bound(cp, &c, &tol());
        assert!(b.contact_limit >= b.strip_limit.min(b.face_limit) - 1e-12);
    }
}
