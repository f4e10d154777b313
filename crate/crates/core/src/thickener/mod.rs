//! Offset-crease thickening: vertex polygons, refinement, the scale bound,
//! the 2D layout and the facet-separated folded state.
//!
//! Every region of the thickened pattern is a convex piece of one face cut
//! by halfplanes `n·x >= c0 + s·c1`, so the whole layout is known as a
//! function of the scale `s` once the planes are fixed.

pub mod fold;
pub mod layout;
pub mod refine;
pub mod scale;
pub mod vertex;

use std::fmt;

use crate::error::Result;
use crate::flat_state::CreaseWidths;
use crate::geometry::{clip_halfplane, HalfPlane, Point2, Polygon2, Tolerance, Vector2};
use crate::pattern::{classify_vertices, CreasePattern, EdgeKind};

pub use fold::{check_folded_intersections, find_global_scale, fold_state, FoldedRegion, FoldedState3D, ScaleSearch};
pub use layout::{check_layout, layout_pattern, Region, ThickenedPattern};
pub use refine::{refine, Trim};
pub use scale::{scale_upper_bound, ScaleBound, ScaleConstraint};
pub use vertex::{
    build_vertex_polygon, clip_vertex_polygon, polygon_vertex, PointSource, PolygonPoint, PolygonVertexSolution,
    VertexPolygon,
};

/// Halfplane `normal·x >= c0 + s·c1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffinePlane {
    pub normal: Vector2,
    pub c0: f64,
    pub c1: f64,
}

impl AffinePlane {
    /// Keeps the side `normal` points to of the line through `base + s·rel`.
    pub fn through(base: Point2, rel: Vector2, normal: Vector2) -> Self {
        let n = normal.normalized();
        AffinePlane {
            normal: n,
            c0: n.dot(base),
            c1: n.dot(rel),
        }
    }

    pub fn at(&self, s: f64) -> HalfPlane {
        HalfPlane {
            normal: self.normal,
            offset: self.c0 + s * self.c1,
        }
    }

    /// True when the bounding line passes through `p` at `s = 0`.
    pub fn anchored_at(&self, p: Point2, tol: &Tolerance) -> bool {
        (self.normal.dot(p) - self.c0).abs() <= tol.eps_abs.max(tol.eps_rel * p.norm())
    }
}

/// Identifies a region of the thickened pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionKey {
    Face(usize),
    /// Half of a widened crease on the side of its `side`-th face.
    Strip { crease: usize, side: usize },
    Hole(usize),
}

impl fmt::Display for RegionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionKey::Face(i) => write!(f, "face_{i}"),
            RegionKey::Strip { crease, side } => write!(f, "crease_{crease}_side_{side}"),
            RegionKey::Hole(v) => write!(f, "hole_{v}"),
        }
    }
}

/// A convex region: a face of the pattern cut by affine halfplanes.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionPlan {
    pub key: RegionKey,
    pub face: usize,
    pub planes: Vec<AffinePlane>,
}

impl RegionPlan {
    pub fn at(&self, cp: &CreasePattern, s: f64, tol: &Tolerance) -> Polygon2 {
        let mut p = cp.face_polygon(self.face);
        for plane in &self.planes {
            p = clip_halfplane(&p, &plane.at(s), tol);
            if p.is_empty() {
                break;
            }
        }
        p
    }
}

/// Everything about the thickened pattern that does not depend on `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub widths: CreaseWidths,
    /// Clipped vertex polygon per vertex (`None` where no crease meets it).
    pub polygons: Vec<Option<VertexPolygon>>,
    pub faces: Vec<RegionPlan>,
    /// Two per crease, in crease order.
    pub strips: Vec<RegionPlan>,
    pub trims: Vec<Trim>,
}

impl Construction {
    pub fn half_width(&self, cp: &CreasePattern, e: usize) -> f64 {
        match cp.edge(e).kind {
            EdgeKind::Crease => 0.5 * self.widths.get(e),
            EdgeKind::Boundary => 0.0,
        }
    }

    pub fn plan_mut(&mut self, key: RegionKey) -> Option<&mut RegionPlan> {
        match key {
            RegionKey::Face(f) => self.faces.get_mut(f),
            RegionKey::Strip { .. } => self.strips.iter_mut().find(|p| p.key == key),
            RegionKey::Hole(_) => None,
        }
    }

    pub fn plan(&self, key: RegionKey) -> Option<&RegionPlan> {
        match key {
            RegionKey::Face(f) => self.faces.get(f),
            RegionKey::Strip { .. } => self.strips.iter().find(|p| p.key == key),
            RegionKey::Hole(_) => None,
        }
    }
}

/// Inward normal of the side of `face` running along edge `e`.
pub(crate) fn inward_normal(cp: &CreasePattern, face: usize, e: usize) -> Vector2 {
    let cycle = &cp.faces()[face];
    let i = cp.face_edges(face).iter().position(|&x| x == e).unwrap();
    let a = cp.vertex(cycle[i]);
    let b = cp.vertex(cycle[(i + 1) % cycle.len()]);
    (b - a).normalized().perp()
}

/// Vertex polygons, face offsets and strip bounds for the given widths,
/// before refinement.
pub fn prepare(cp: &CreasePattern, widths: &CreaseWidths, tol: &Tolerance) -> Result<Construction> {
    let vc = classify_vertices(cp);
    let polygons = (0..cp.vertices().len())
        .map(|v| Ok(build_vertex_polygon(cp, v, widths, &vc, tol)?.map(|p| clip_vertex_polygon(&p, tol))))
        .collect::<Result<Vec<_>>>()?;

    let mut c = Construction {
        widths: widths.clone(),
        polygons,
        faces: Vec::new(),
        strips: Vec::new(),
        trims: Vec::new(),
    };
    for f in 0..cp.face_count() {
        let planes = cp
            .face_edges(f)
            .iter()
            .filter(|&&e| cp.edge(e).kind == EdgeKind::Crease)
            .map(|&e| {
                let n = inward_normal(cp, f, e);
                let p = cp.segment(e).0;
                AffinePlane::through(p, n * c.half_width(cp, e), n)
            })
            .collect();
        c.faces.push(RegionPlan {
            key: RegionKey::Face(f),
            face: f,
            planes,
        });
    }
    for e in cp.creases().collect::<Vec<_>>() {
        let (fa, fb) = cp.crease_faces(e).unwrap();
        let hw = c.half_width(cp, e);
        let [v0, v1] = cp.edge(e).v;
        let (p0, p1) = cp.segment(e);
        let u = (p1 - p0).normalized();
        for (side, (f, g)) in [(fa, fb), (fb, fa)].into_iter().enumerate() {
            let n = inward_normal(cp, f, e);
            let mut planes = vec![
                AffinePlane::through(p0, Point2::ZERO, n),
                AffinePlane::through(p0, n * hw, -n),
            ];
            for (v, p, along) in [(v0, p0, u), (v1, p1, -u)] {
                let poly = c.polygons[v].as_ref().expect("crease endpoints have polygons");
                let (Some(qf), Some(qg)) = (poly.sector_offset(f), poly.sector_offset(g)) else {
                    continue;
                };
                let mut m = (qg - qf).perp();
                if m.dot(along) < 0.0 {
                    m = -m;
                }
                planes.push(AffinePlane::through(p, qf, m));
                if poly.clipped && qf.dot(along) < 0.0 && poly.outline.iter().any(|q| q.norm() <= tol.eps_abs) {
                    // the strip runs past its vertex; stop it at the hull edge
                    // from the vertex to its own sector point
                    let mut k = qf.perp();
                    if k.dot(along) < 0.0 {
                        k = -k;
                    }
                    planes.push(AffinePlane::through(p, Point2::ZERO, k));
                }
            }
            c.strips.push(RegionPlan {
                key: RegionKey::Strip { crease: e, side },
                face: f,
                planes,
            });
        }
    }
    Ok(c)
}

/// `prepare` followed by local refinement.
pub fn construct(cp: &CreasePattern, widths: &CreaseWidths, tol: &Tolerance) -> Result<Construction> {
    let mut c = prepare(cp, widths, tol)?;
    refine(cp, &mut c, tol)?;
    Ok(c)
}
