//! Folded state with separated layers: reduced faces lie flat at their
//! heights and each half-strip stands as a vertical wall between a face and
//! the middle height of its crease.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flat_state::{FlatMap, LayerGraph};
use crate::geometry::{Polygon2, Tolerance};
use crate::geometry3d::{polygon_contact, Contact, Point3, Polygon3};
use crate::pattern::CreasePattern;
use crate::report::{Subject, ValidationReport};

use super::{inward_normal, layout_pattern, Construction, RegionKey, ScaleBound, ThickenedPattern};

#[derive(Clone, Debug, PartialEq)]
pub struct FoldedRegion {
    pub key: RegionKey,
    pub polygon: Polygon3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoldedState3D {
    pub scale: f64,
    pub regions: Vec<FoldedRegion>,
}

impl FoldedState3D {
    pub fn region(&self, key: RegionKey) -> Option<&Polygon3> {
        self.regions.iter().find(|r| r.key == key).map(|r| &r.polygon)
    }
}

/// Places reduced faces at `z = s·height` through the flat folding and
/// stands half-strips up as walls.
pub fn fold_state(
    cp: &CreasePattern,
    c: &Construction,
    tp: &ThickenedPattern,
    fm: &FlatMap,
    g: &LayerGraph,
    tol: &Tolerance,
) -> Result<FoldedState3D> {
    let s = tp.scale;
    let mut regions = Vec::new();
    for reg in &tp.regions {
        if reg.polygon.len() < 3 {
            continue;
        }
        let polygon = match reg.key {
            RegionKey::Face(f) => {
                let z = s * g.heights[f];
                Polygon3::new(reg.polygon.vertices.iter().map(|&p| Point3::from_plan(fm.map(f, p), z)).collect())
            }
            RegionKey::Strip { crease, side } => {
                let (fa, fb) = cp.crease_faces(crease).expect("strip on a crease");
                let (f, other) = if side == 0 { (fa, fb) } else { (fb, fa) };
                let n = inward_normal(cp, f, crease);
                let p0 = cp.segment(crease).0;
                let off = s * c.half_width(cp, crease);
                let sign = if g.heights[f] < g.heights[other] { 1.0 } else { -1.0 };
                let z0 = s * g.heights[f];

                // both offset lines must land on the same plan line
                let mate = inward_normal(cp, other, crease);
                let here = fm.map(f, p0 + n * off);
                let there = fm.map(other, p0 + mate * off);
                if here.dist(there) > tol.eps_abs.max(tol.eps_rel * off) * 10.0 {
                    return Err(Error::Invariant(format!(
                        "offset lines of crease {crease} do not coincide when folded"
                    )));
                }

                Polygon3::new(
                    reg.polygon
                        .vertices
                        .iter()
                        .map(|&x| {
                            let d = (off - n.dot(x - p0)).max(0.0);
                            Point3::from_plan(fm.map(f, x + n * d), z0 + sign * d)
                        })
                        .collect(),
                )
            }
            RegionKey::Hole(_) => continue,
        };
        regions.push(FoldedRegion { key: reg.key, polygon });
    }
    Ok(FoldedState3D { scale: s, regions })
}

/// Pairwise test of all folded regions; touching is allowed, positive
/// interpenetration is not.
pub fn check_folded_intersections(fs: &FoldedState3D, tol: &Tolerance, exec: Exec) -> ValidationReport {
    let mut r = ValidationReport::new("folded_intersections");
    let regs = &fs.regions;
    let hits = exec.filter_pairs(regs.len(), |i, j| match polygon_contact(&regs[i].polygon, &regs[j].polygon, tol) {
        Contact::Penetrating(m) => Some((i, j, m)),
        _ => None,
    });
    for (i, j, m) in hits {
        r.fail(
            Subject::Regions(regs[i].key.to_string(), regs[j].key.to_string()),
            format!("regions interpenetrate (measure {m:.3e})"),
        );
    }
    r
}

/// Result of the global scale search.
#[derive(Clone, Debug)]
pub struct ScaleSearch {
    pub scale: f64,
    pub thickened: ThickenedPattern,
    pub folded: FoldedState3D,
    /// Every scale tried, with whether it passed.
    pub attempts: Vec<(f64, bool)>,
}

pub const MAX_HALVINGS: usize = 40;

/// Starts at `requested` (default `s*/2`) and halves until the folded state
/// has no interpenetration.
#[allow(clippy::too_many_arguments)]
pub fn find_global_scale(
    cp: &CreasePattern,
    c: &Construction,
    bound: &ScaleBound,
    fm: &FlatMap,
    g: &LayerGraph,
    requested: Option<f64>,
    tol: &Tolerance,
    exec: Exec,
) -> Result<ScaleSearch> {
    let upper = bound.s_star;
    let mut s = requested.unwrap_or(0.5 * upper);
    if !(s > 0.0 && s <= upper * (1.0 + 1e-12)) {
        return Err(Error::ScaleOutOfRange { requested: s, upper });
    }
    let mut attempts = Vec::new();
    for _ in 0..=MAX_HALVINGS {
        let tp = layout_pattern(cp, c, bound, s, tol, exec)?;
        let fs = fold_state(cp, c, &tp, fm, g, tol)?;
        let ok = check_folded_intersections(&fs, tol, exec).passed();
        attempts.push((s, ok));
        if ok {
            return Ok(ScaleSearch {
                scale: s,
                thickened: tp,
                folded: fs,
                attempts,
            });
        }
        s *= 0.5;
    }
    Err(Error::ScaleSearch {
        smallest_failing: attempts.last().map(|a| a.0).unwrap_or(s),
    })
}

/// Vertical extent of a folded polygon.
pub fn z_range(p: &Polygon3) -> (f64, f64) {
    p.vertices
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v.z), hi.max(v.z)))
}

/// Flattens a horizontal folded polygon back to the plane.
pub fn plan_polygon(p: &Polygon3) -> Polygon2 {
    Polygon2::new(p.vertices.iter().map(|v| v.plan()).collect())
}
