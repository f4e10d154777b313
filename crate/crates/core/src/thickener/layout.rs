//! The thickened crease pattern at a chosen scale.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{clip_convex, convex_overlap_area, Polygon2, Tolerance};
use crate::pattern::CreasePattern;
use crate::report::{Subject, ValidationReport};

use super::{Construction, RegionKey, ScaleBound};

#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub key: RegionKey,
    /// Face the region lies in (`None` for holes, which span faces).
    pub face: Option<usize>,
    pub polygon: Polygon2,
}

/// Reduced faces, half-strips and nondegenerate holes at one scale.
#[derive(Clone, Debug, PartialEq)]
pub struct ThickenedPattern {
    pub scale: f64,
    pub scale_upper_bound: f64,
    pub regions: Vec<Region>,
}

impl ThickenedPattern {
    pub fn region(&self, key: RegionKey) -> Option<&Region> {
        self.regions.iter().find(|r| r.key == key)
    }

    pub fn face(&self, f: usize) -> Option<&Polygon2> {
        self.region(RegionKey::Face(f)).map(|r| &r.polygon)
    }

    pub fn strip(&self, crease: usize, side: usize) -> Option<&Polygon2> {
        self.region(RegionKey::Strip { crease, side }).map(|r| &r.polygon)
    }

    pub fn holes(&self) -> impl Iterator<Item = &Region> {
        self.regions.iter().filter(|r| matches!(r.key, RegionKey::Hole(_)))
    }
}

/// Evaluates the construction at scale `s` and checks the result.
pub fn layout_pattern(
    cp: &CreasePattern,
    c: &Construction,
    bound: &ScaleBound,
    s: f64,
    tol: &Tolerance,
    exec: Exec,
) -> Result<ThickenedPattern> {
    let upper = bound.s_star;
    if !(s > 0.0 && s <= upper * (1.0 + 1e-12)) {
        return Err(Error::ScaleOutOfRange { requested: s, upper });
    }
    let mut regions: Vec<Region> = c
        .faces
        .iter()
        .chain(&c.strips)
        .map(|plan| Region {
            key: plan.key,
            face: Some(plan.face),
            polygon: plan.at(cp, s, tol),
        })
        .collect();
    for p in c.polygons.iter().flatten() {
        let polygon = p.at(s);
        if !p.degenerate && polygon.area() > tol.eps_abs * s {
            regions.push(Region {
                key: RegionKey::Hole(p.vertex),
                face: None,
                polygon,
            });
        }
    }
    let tp = ThickenedPattern {
        scale: s,
        scale_upper_bound: upper,
        regions,
    };
    let report = check_layout(cp, c, &tp, tol, exec);
    if !report.passed() {
        return Err(Error::Invariant(report.to_string()));
    }
    Ok(tp)
}

fn subject(a: RegionKey, b: RegionKey) -> Subject {
    Subject::Regions(a.to_string(), b.to_string())
}

/// Disjoint interiors that cover the pattern, containment in the faces,
/// strip widths and (below the upper bound) positive reduced-face areas.
pub fn check_layout(cp: &CreasePattern, c: &Construction, tp: &ThickenedPattern, tol: &Tolerance, exec: Exec) -> ValidationReport {
    let mut r = ValidationReport::new("layout");
    let (lo, hi) = cp.bbox();
    let eps_area = tol.eps_abs * lo.dist(hi).max(1.0);
    let regions = &tp.regions;

    let overlaps = exec.filter_pairs(regions.len(), |i, j| {
        let a = convex_overlap_area(&regions[i].polygon, &regions[j].polygon, tol);
        (a > eps_area).then_some((i, j, a))
    });
    for (i, j, a) in overlaps {
        r.fail(subject(regions[i].key, regions[j].key), format!("interiors overlap by {a:.3e}"));
    }

    let faces: Vec<Polygon2> = (0..cp.face_count()).map(|f| cp.face_polygon(f)).collect();
    for reg in regions {
        let area = reg.polygon.area();
        let inside: f64 = match reg.face {
            Some(f) => clip_convex(&reg.polygon, &faces[f], tol).area(),
            None => faces.iter().map(|f| convex_overlap_area(&reg.polygon, f, tol)).sum(),
        };
        if area - inside > eps_area {
            r.fail(subject(reg.key, reg.key), format!("{:.3e} of its area lies outside its face", area - inside));
        }
        match reg.key {
            RegionKey::Face(f) if tp.scale < tp.scale_upper_bound * (1.0 - 1e-9) && area <= eps_area => {
                r.fail(Subject::Face(f), "reduced face has no area");
            }
            RegionKey::Strip { crease, .. } => {
                // measured from the crease line: strips may run past a vertex
                // whose polygon does not surround it
                let (a, b) = cp.segment(crease);
                let u = (b - a).normalized();
                let reach = reg
                    .polygon
                    .vertices
                    .iter()
                    .map(|&p| u.cross(p - a).abs())
                    .fold(0.0, f64::max);
                let hw = tp.scale * c.half_width(cp, crease);
                if reach > hw + tol.eps_abs.max(tol.eps_rel * hw) {
                    r.fail(Subject::Edge(crease), format!("strip reaches {reach} from its crease, offset is {hw}"));
                }
            }
            _ => {}
        }
    }
    let covered: f64 = regions.iter().map(|reg| reg.polygon.area()).sum();
    let total = cp.face_area();
    if (covered - total).abs() > eps_area * regions.len().max(1) as f64 {
        r.fail(Subject::Pattern, format!("regions cover {covered} of the pattern's {total}"));
    }
    r
}
