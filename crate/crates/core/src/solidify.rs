//! Panel thickness: face and wall panels extruded from the folded state,
//! relief cut from the inside half of faces next to each crease, and a
//! local interpenetration check around every crease.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flat_state::{Assignment, CreaseWidths, FlatState};
use crate::geometry::{clip_halfplane, HalfPlane, Polygon2, Tolerance};
use crate::geometry3d::{prism_clearance, Point3, Polygon3, Prism, Vector3};
use crate::pattern::CreasePattern;
use crate::report::{Subject, ValidationReport};
use crate::thickener::{inward_normal, Construction, FoldedState3D, RegionKey, ThickenedPattern};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThicknessConfig {
    pub t: f64,
    /// Fraction of the thickness on the front side of the paper.
    pub split: f64,
    /// Cut relief strips; turning this off is only useful to show why they
    /// are needed.
    pub relief: bool,
}

impl ThicknessConfig {
    pub fn new(t: f64) -> Self {
        ThicknessConfig {
            t,
            split: 0.5,
            relief: true,
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(Error::Config(format!("thickness must be nonnegative, got {}", self.t)));
        }
        if !(0.0..=1.0).contains(&self.split) {
            return Err(Error::Config(format!("split must lie in [0, 1], got {}", self.split)));
        }
        Ok(())
    }
}

/// Largest panel thickness, `s·min w`, and the crease that sets it.
pub fn max_thickness(widths: &CreaseWidths, s: f64) -> Option<(f64, usize)> {
    widths.min_positive().map(|(e, w)| (s * w, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolidKey {
    Face(usize),
    /// Both half-strips of a widened crease.
    Wall(usize),
    Hole(usize),
}

impl fmt::Display for SolidKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolidKey::Face(i) => write!(f, "face_{i}"),
            SolidKey::Wall(e) => write!(f, "wall_{e}"),
            SolidKey::Hole(v) => write!(f, "hole_{v}"),
        }
    }
}

/// A panel as a union of convex prisms; holes carry no material.
#[derive(Clone, Debug, PartialEq)]
pub struct Solid {
    pub key: SolidKey,
    pub pieces: Vec<Prism>,
    /// Area of the region times the thickness.
    pub full_volume: f64,
    pub relief_volume: f64,
}

impl Solid {
    pub fn volume(&self) -> f64 {
        self.pieces.iter().map(Prism::volume).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolidModel {
    pub config: ThicknessConfig,
    pub t_max: f64,
    pub solids: Vec<Solid>,
}

impl SolidModel {
    pub fn solid(&self, key: SolidKey) -> Option<&Solid> {
        self.solids.iter().find(|s| s.key == key)
    }
}

fn up() -> Vector3 {
    Point3::new(0.0, 0.0, 1.0)
}

fn lift(poly: &Polygon2, face: usize, z: f64, flat: &FlatState) -> Polygon3 {
    Polygon3::new(
        poly.vertices
            .iter()
            .map(|&p| Point3::from_plan(flat.flat_map.map(face, p), z))
            .collect(),
    )
}

/// Extrudes every folded region and cuts the relief strips.
pub fn apply_thickness(
    cp: &CreasePattern,
    flat: &FlatState,
    c: &Construction,
    tp: &ThickenedPattern,
    fs: &FoldedState3D,
    cfg: &ThicknessConfig,
) -> Result<SolidModel> {
    cfg.check()?;
    let s = tp.scale;
    let (t_max, binding) = max_thickness(&flat.widths, s).ok_or(Error::NoCreases)?;
    if cfg.t > t_max * (1.0 + 1e-12) {
        return Err(Error::ThicknessExceeded {
            t: cfg.t,
            t_max,
            crease: binding,
        });
    }
    let t = cfg.t;
    let front = cfg.split * t;
    let back = t - front;
    let g = &flat.graph;
    let mut solids = Vec::new();

    for f in 0..cp.face_count() {
        let Some(reduced) = tp.face(f) else { continue };
        let z = s * g.heights[f];
        // the front of the paper faces down on mirrored faces
        let n_front = if flat.flat_map.parity(f) { up() * -1.0 } else { up() };
        let mut front_poly = reduced.clone();
        let mut back_poly = reduced.clone();
        if cfg.relief {
            for &e in cp.face_edges(f) {
                let Some(label) = flat.assignment[e] else { continue };
                let n = inward_normal(cp, f, e);
                let p0 = cp.segment(e).0;
                let h = HalfPlane {
                    normal: n,
                    offset: n.dot(p0) + s * c.half_width(cp, e) + 0.5 * t,
                };
                // a valley's inside is the front of both faces
                let half = match label {
                    Assignment::Valley => &mut front_poly,
                    Assignment::Mountain => &mut back_poly,
                };
                *half = clip_halfplane(half, &h, &Tolerance::default());
            }
        }
        let area = reduced.area();
        let relief = (area - front_poly.area()) * front + (area - back_poly.area()) * back;
        let mut pieces = Vec::new();
        for (poly, lo, hi) in [(&back_poly, -back, 0.0), (&front_poly, 0.0, front)] {
            if poly.len() >= 3 && hi > lo {
                pieces.push(Prism::new(lift(poly, f, z, flat), n_front, lo, hi));
            }
        }
        solids.push(Solid {
            key: SolidKey::Face(f),
            pieces,
            full_volume: area * t,
            relief_volume: relief,
        });
    }

    for e in cp.creases() {
        let (fa, fb) = cp.crease_faces(e).expect("crease");
        let mut pieces = Vec::new();
        let mut area = 0.0;
        for (side, (f, other)) in [(fa, fb), (fb, fa)].into_iter().enumerate() {
            let Some(wall) = fs.region(RegionKey::Strip { crease: e, side }) else { continue };
            area += wall.area();
            let eps_f = if flat.flat_map.parity(f) { -1.0 } else { 1.0 };
            let rise = if g.heights[f] < g.heights[other] { 1.0 } else { -1.0 };
            let toward = flat.flat_map.maps[f].apply_vec(-inward_normal(cp, f, e));
            // front normal after the 90° turn about the offset line
            let n_front = Point3::new(toward.x, toward.y, 0.0) * (-eps_f * rise);
            if t > 0.0 {
                pieces.push(Prism::new(wall.clone(), n_front, -back, front));
            }
        }
        solids.push(Solid {
            key: SolidKey::Wall(e),
            pieces,
            full_volume: area * t,
            relief_volume: 0.0,
        });
    }

    for hole in tp.holes() {
        if let RegionKey::Hole(v) = hole.key {
            solids.push(Solid {
                key: SolidKey::Hole(v),
                pieces: Vec::new(),
                full_volume: 0.0,
                relief_volume: 0.0,
            });
        }
    }
    Ok(SolidModel {
        config: *cfg,
        t_max,
        solids,
    })
}

fn clearance(a: &Solid, b: &Solid) -> f64 {
    a.pieces
        .iter()
        .flat_map(|p| b.pieces.iter().map(move |q| prism_clearance(p, q)))
        .fold(f64::INFINITY, f64::min)
}

/// Clearances among the solids meeting at one crease.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalClearance {
    pub crease: usize,
    /// Between the two face panels.
    pub faces: f64,
    /// Smallest over every pair (negative means interpenetration).
    pub min: f64,
    pub worst_pair: (SolidKey, SolidKey),
}

pub fn local_clearances(cp: &CreasePattern, sm: &SolidModel, exec: Exec) -> Vec<LocalClearance> {
    let creases: Vec<usize> = cp.creases().collect();
    exec.map(&creases, |&e| {
        let (a, b) = cp.crease_faces(e).expect("crease");
        let keys = [SolidKey::Face(a), SolidKey::Face(b), SolidKey::Wall(e)];
        let solids: Vec<&Solid> = keys.iter().filter_map(|&k| sm.solid(k)).collect();
        let mut faces = f64::INFINITY;
        let mut min = f64::INFINITY;
        let mut worst_pair = (keys[0], keys[1]);
        for i in 0..solids.len() {
            for j in i + 1..solids.len() {
                let d = clearance(solids[i], solids[j]);
                if matches!((solids[i].key, solids[j].key), (SolidKey::Face(_), SolidKey::Face(_))) {
                    faces = faces.min(d);
                }
                if d < min {
                    min = d;
                    worst_pair = (solids[i].key, solids[j].key);
                }
            }
        }
        LocalClearance {
            crease: e,
            faces,
            min,
            worst_pair,
        }
    })
}

/// Fails at any crease whose face and wall panels interpenetrate.
pub fn check_solid_local(cp: &CreasePattern, sm: &SolidModel, tol: &Tolerance, exec: Exec) -> ValidationReport {
    let mut r = ValidationReport::new("solid_local");
    let eps = tol.eps_abs.max(tol.eps_rel * sm.config.t);
    for lc in local_clearances(cp, sm, exec) {
        if lc.min < -eps {
            r.fail(
                Subject::Regions(lc.worst_pair.0.to_string(), lc.worst_pair.1.to_string()),
                format!("panels at crease {} interpenetrate by {:.3e}", lc.crease, -lc.min),
            );
        }
    }
    r
}
