//! Local refinement around each vertex polygon.
//!
//! Near a vertex every region is a cone scaled by `s` about the vertex, so
//! overlaps can be resolved once at unit scale. A lower-priority region that
//! overlaps a higher one is cut by the higher region's side line that keeps
//! the most of it; the cut becomes a plane anchored at the vertex.

use crate::error::{Error, Result};
use crate::geometry::{clip_convex, clip_halfplane, HalfPlane, Point2, Polygon2, Tolerance};
use crate::pattern::{CreasePattern, EdgeKind};

use super::{AffinePlane, Construction, RegionKey, VertexPolygon};

/// A cut applied to `target` because it overlapped `by` near `vertex`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trim {
    pub vertex: usize,
    pub target: RegionKey,
    pub by: RegionKey,
    pub plane: AffinePlane,
}

const MAX_PASSES: usize = 64;

struct Local {
    key: RegionKey,
    poly: Polygon2,
}

fn square(r: f64) -> Polygon2 {
    Polygon2::new(vec![
        Point2::new(-r, -r),
        Point2::new(r, -r),
        Point2::new(r, r),
        Point2::new(-r, r),
    ])
}

/// Unit-scale cone of a region at `v`, relative to the vertex.
fn local_region(cp: &CreasePattern, c: &Construction, key: RegionKey, v: usize, r: f64, tol: &Tolerance) -> Polygon2 {
    let plan = c.plan(key).expect("face or strip plan");
    let center = cp.vertex(v);
    let mut poly = square(r);
    let cycle = &cp.faces()[plan.face];
    let i = cycle.iter().position(|&x| x == v).expect("region face contains the vertex");
    let n = cycle.len();
    let prev = cp.vertex(cycle[(i + n - 1) % n]);
    let next = cp.vertex(cycle[(i + 1) % n]);
    for h in [
        HalfPlane::from_line(Point2::ZERO, next - center, 1),
        HalfPlane::from_line(Point2::ZERO, center - prev, 1),
    ] {
        poly = clip_halfplane(&poly, &h, tol);
    }
    for plane in plan.planes.iter().filter(|p| p.anchored_at(center, tol)) {
        let h = HalfPlane {
            normal: plane.normal,
            offset: plane.c0 - plane.normal.dot(center) + plane.c1,
        };
        poly = clip_halfplane(&poly, &h, tol);
    }
    poly
}

fn touches_box(p: &Polygon2, r: f64) -> bool {
    let lim = r * (1.0 - 1e-6);
    p.vertices.iter().any(|q| q.x.abs() >= lim || q.y.abs() >= lim)
}

fn refine_vertex(cp: &CreasePattern, c: &mut Construction, poly: &VertexPolygon, tol: &Tolerance) -> Result<()> {
    let v = poly.vertex;
    let incident: Vec<usize> = cp
        .incident_edges(v)
        .into_iter()
        .map(|(e, _)| e)
        .filter(|&e| cp.edge(e).kind == EdgeKind::Crease)
        .collect();
    let reach = poly
        .outline
        .iter()
        .chain(poly.points.iter().map(|p| &p.offset))
        .map(|q| q.norm())
        .chain(incident.iter().map(|&e| c.half_width(cp, e)))
        .fold(0.0, f64::max);
    if reach <= 0.0 {
        return Ok(());
    }
    let r = 4.0 * reach;
    let eps_area = tol.eps_abs * r * r;

    let mut strips: Vec<(f64, RegionKey)> = incident
        .iter()
        .flat_map(|&e| (0..2).map(move |side| RegionKey::Strip { crease: e, side }))
        .map(|k| match k {
            RegionKey::Strip { crease, .. } => (c.widths.get(crease), k),
            _ => unreachable!(),
        })
        .collect();
    strips.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut regions: Vec<Local> = Vec::new();
    if !poly.degenerate {
        regions.push(Local {
            key: RegionKey::Hole(v),
            poly: Polygon2::new(poly.outline.clone()).to_ccw(),
        });
    }
    for (_, key) in strips {
        let p = local_region(cp, c, key, v, r, tol);
        regions.push(Local { key, poly: p });
    }
    for s in cp.sectors(v) {
        if let Some(f) = s.face {
            let key = RegionKey::Face(f);
            let p = local_region(cp, c, key, v, r, tol);
            regions.push(Local { key, poly: p });
        }
    }

    for _ in 0..MAX_PASSES {
        let mut changed = false;
        for i in 0..regions.len() {
            for j in i + 1..regions.len() {
                let (hi, lo) = (&regions[i].poly, &regions[j].poly);
                if hi.len() < 3 || lo.len() < 3 || clip_convex(lo, hi, tol).area() <= eps_area {
                    continue;
                }
                // outside of one side line of the higher region
                let best = hi
                    .edges()
                    .filter(|(a, b)| a.dist(*b) > tol.eps_abs)
                    .map(|(a, b)| HalfPlane::from_line(a, b - a, -1))
                    .map(|h| (clip_halfplane(lo, &h, tol).area(), h))
                    .max_by(|x, y| x.0.total_cmp(&y.0))
                    .map(|(_, h)| h)
                    .expect("convex region has sides");
                let removed = clip_halfplane(lo, &best.flipped(), tol);
                if touches_box(&removed, r) {
                    return Err(Error::UnboundedTrim { vertex: v });
                }
                let center = poly.center;
                let plane = AffinePlane {
                    normal: best.normal,
                    c0: best.normal.dot(center),
                    c1: best.offset,
                };
                let (target, by) = (regions[j].key, regions[i].key);
                regions[j].poly = clip_halfplane(lo, &best, tol);
                c.plan_mut(target).expect("trimmable region").planes.push(plane);
                c.trims.push(Trim {
                    vertex: v,
                    target,
                    by,
                    plane,
                });
                changed = true;
            }
        }
        if !changed {
            return Ok(());
        }
    }
    Err(Error::Invariant(format!("refinement at vertex {v} did not settle")))
}

/// Resolves overlaps between holes, strips and reduced faces around every
/// vertex, recording the cuts in `c`.
pub fn refine(cp: &CreasePattern, c: &mut Construction, tol: &Tolerance) -> Result<()> {
    let polygons: Vec<VertexPolygon> = c.polygons.iter().flatten().cloned().collect();
    for poly in &polygons {
        refine_vertex(cp, c, poly, tol)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat_state::CreaseWidths;
    use crate::geometry::{region_intersect, Intersection};
    use crate::samples;
    use crate::thickener::{prepare, RegionPlan};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn uniform_widths(cp: &CreasePattern, w: f64) -> Vec<f64> {
        cp.edges()
            .iter()
            .map(|e| if e.kind == EdgeKind::Crease { w } else { 0.0 })
            .collect()
    }

    fn all_regions(cp: &CreasePattern, c: &Construction, s: f64) -> Vec<(RegionKey, Polygon2)> {
        let mut out: Vec<(RegionKey, Polygon2)> = c
            .faces
            .iter()
            .chain(&c.strips)
            .map(|p: &RegionPlan| (p.key, p.at(cp, s, &tol())))
            .collect();
        for p in c.polygons.iter().flatten().filter(|p| !p.degenerate) {
            out.push((RegionKey::Hole(p.vertex), p.at(s)));
        }
        out
    }

    fn overlapping_pairs(regions: &[(RegionKey, Polygon2)]) -> Vec<(RegionKey, RegionKey)> {
        let mut bad = Vec::new();
        for i in 0..regions.len() {
            for j in i + 1..regions.len() {
                let (a, b) = (&regions[i].1, &regions[j].1);
                if a.len() < 3 || b.len() < 3 {
                    continue;
                }
                if let Ok(Intersection::Overlapping(x)) = region_intersect(a, b, &tol()) {
                    if x > 1e-9 {
                        bad.push((regions[i].0, regions[j].0));
                    }
                }
            }
        }
        bad
    }

    #[test]
    fn no_trims_on_simple_patterns() {
        for (doc, w) in [(samples::half(), 1.0), (samples::four_vertex(), 1.0)] {
            let cp = &doc.pattern;
            let mut c = prepare(cp, &CreaseWidths(uniform_widths(cp, w)), &tol()).unwrap();
            refine(cp, &mut c, &tol()).unwrap();
            assert!(c.trims.is_empty());
        }
    }

    #[test]
    fn wide_narrow_sector_stays_disjoint() {
        // width 4 on a crease bounding a 30° sector, others 1
        let doc = samples::single_vertex(&[30., 150., 150., 30.], &[0, 1, 2, 3]);
        let cp = &doc.pattern;
        let mut w = uniform_widths(cp, 1.0);
        w[cp.find_edge(0, 2).unwrap()] = 4.0;
        let mut c = prepare(cp, &CreaseWidths(w), &tol()).unwrap();
        refine(cp, &mut c, &tol()).unwrap();
        assert!(overlapping_pairs(&all_regions(cp, &c, 0.05)).is_empty());
    }

    #[test]
    fn crossing_vertex_is_trimmed_to_disjoint() {
        let doc = samples::single_vertex(&[30., 150., 150., 30.], &[0, 1, 2, 3]);
        let cp = &doc.pattern;
        let mut w = uniform_widths(cp, 1.0);
        w[cp.find_edge(0, 3).unwrap()] = 8.0;
        let mut c = prepare(cp, &CreaseWidths(w), &tol()).unwrap();
        let s = 0.02;
        let before = overlapping_pairs(&all_regions(cp, &c, s));
        assert!(!before.is_empty());
        refine(cp, &mut c, &tol()).unwrap();
        assert!(!c.trims.is_empty());
        let after = overlapping_pairs(&all_regions(cp, &c, s));
        assert!(after.is_empty(), "{after:?}");
    }
}
