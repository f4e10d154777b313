//! Output formats: the thickened pattern as JSON, SVG drawings of the
//! layout and Wavefront OBJ meshes of the folded state and solids.
//!
//! All numbers are rounded to 12 significant digits so output is stable.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::document::WeightEntry;
use crate::error::{Error, Result};
use crate::flat_state::{Assignment, CreaseWidths};
use crate::geometry::{point_segment_distance, Point2, Polygon2};
use crate::geometry3d::{Point3, Polygon3};
use crate::pattern::{parse_pattern, CreasePattern, Edge, PatternDocument};
use crate::pipeline::Thickened;
use crate::solidify::SolidModel;
use crate::thickener::{FoldedState3D, Region, RegionKey, ThickenedPattern};

/// `x` rounded to 12 significant digits, with `-0` folded to `0`.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn num(x: f64) -> String {
    format!("{}", round12(x))
}

fn xy(p: Point2) -> [f64; 2] {
    [round12(p.x), round12(p.y)]
}

fn ring(p: &Polygon2) -> Vec<[f64; 2]> {
    p.vertices.iter().map(|&v| xy(v)).collect()
}

#[derive(Serialize, Deserialize)]
struct CreaseEntry {
    edge: usize,
    w: f64,
    assignment: Option<Assignment>,
}

#[derive(Serialize, Deserialize)]
struct FaceEntry {
    face: usize,
    polygon: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct StripEntry {
    crease: usize,
    sides: [Vec<[f64; 2]>; 2],
}

#[derive(Serialize, Deserialize)]
struct HoleEntry {
    vertex: usize,
    polygon: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct OutputDocument {
    vertices: Vec<[f64; 2]>,
    edges: Vec<Edge>,
    faces: Vec<Vec<usize>>,
    layer_order: Vec<usize>,
    weights: Vec<WeightEntry>,
    scale: f64,
    scale_upper_bound: f64,
    widths: Vec<CreaseEntry>,
    reduced_faces: Vec<FaceEntry>,
    strips: Vec<StripEntry>,
    holes: Vec<HoleEntry>,
}

/// The input pattern extended with the layout; readable again as an input
/// document (it carries explicit weights reproducing the same widths).
pub fn thickened_json(doc: &PatternDocument, th: &Thickened) -> String {
    let cp = &doc.pattern;
    let tp = &th.layout;
    let g = &th.flat.graph;
    let out = OutputDocument {
        vertices: cp.vertices().iter().map(|&v| xy(v)).collect(),
        edges: cp.edges().to_vec(),
        faces: cp.faces().to_vec(),
        layer_order: doc.layer_order.clone(),
        weights: g
            .reduced
            .iter()
            .zip(&g.weights)
            .map(|(&(a, b), &w)| WeightEntry {
                faces: [a, b],
                w: round12(w),
            })
            .collect(),
        scale: round12(tp.scale),
        scale_upper_bound: round12(tp.scale_upper_bound),
        widths: cp
            .creases()
            .map(|e| CreaseEntry {
                edge: e,
                w: round12(th.flat.widths.get(e)),
                assignment: th.flat.assignment[e],
            })
            .collect(),
        reduced_faces: (0..cp.face_count())
            .filter_map(|f| tp.face(f).map(|p| FaceEntry { face: f, polygon: ring(p) }))
            .collect(),
        strips: cp
            .creases()
            .map(|e| StripEntry {
                crease: e,
                sides: [0, 1].map(|side| tp.strip(e, side).map(ring).unwrap_or_default()),
            })
            .collect(),
        holes: tp
            .holes()
            .filter_map(|h| match h.key {
                RegionKey::Hole(v) => Some(HoleEntry {
                    vertex: v,
                    polygon: ring(&h.polygon),
                }),
                _ => None,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&out).expect("serializable");
    s.push('\n');
    s
}

/// A thickened document read back.
#[derive(Clone, Debug)]
pub struct ThickenedDocument {
    pub document: PatternDocument,
    pub widths: CreaseWidths,
    pub assignment: Vec<Option<Assignment>>,
    pub layout: ThickenedPattern,
}

fn polygon(pts: &[[f64; 2]]) -> Polygon2 {
    Polygon2::new(pts.iter().map(|&[x, y]| Point2::new(x, y)).collect())
}

pub fn parse_thickened(text: &str) -> Result<ThickenedDocument> {
    let document = parse_pattern(text)?;
    let raw: OutputDocument = serde_json::from_str(text)?;
    let n = document.pattern.edges().len();
    let mut widths = vec![0.0; n];
    let mut assignment = vec![None; n];
    for c in &raw.widths {
        if c.edge >= n {
            return Err(Error::IndexOutOfRange {
                what: "edge",
                index: c.edge,
                len: n,
            });
        }
        widths[c.edge] = c.w;
        assignment[c.edge] = c.assignment;
    }
    let mut regions = Vec::new();
    for f in &raw.reduced_faces {
        regions.push(Region {
            key: RegionKey::Face(f.face),
            face: Some(f.face),
            polygon: polygon(&f.polygon),
        });
    }
    for s in &raw.strips {
        let faces = document.pattern.crease_faces(s.crease).ok_or_else(|| {
            Error::Document(format!("strip on edge {} which is not a crease", s.crease))
        })?;
        for (side, pts) in s.sides.iter().enumerate() {
            if pts.is_empty() {
                continue;
            }
            regions.push(Region {
                key: RegionKey::Strip { crease: s.crease, side },
                face: Some(if side == 0 { faces.0 } else { faces.1 }),
                polygon: polygon(pts),
            });
        }
    }
    for h in &raw.holes {
        regions.push(Region {
            key: RegionKey::Hole(h.vertex),
            face: None,
            polygon: polygon(&h.polygon),
        });
    }
    Ok(ThickenedDocument {
        document,
        widths: CreaseWidths(widths),
        assignment,
        layout: ThickenedPattern {
            scale: raw.scale,
            scale_upper_bound: raw.scale_upper_bound,
            regions,
        },
    })
}

const SVG_UNIT: f64 = 100.0;

/// Segment of a strip side lying on its offset line.
fn offset_segment(cp: &CreasePattern, strip: &Polygon2, e: usize, hw: f64) -> Option<(Point2, Point2)> {
    let (a, b) = cp.segment(e);
    let u = (b - a).normalized();
    let tol = 1e-9 * hw.max(1.0);
    let on: Vec<Point2> = strip
        .vertices
        .iter()
        .copied()
        .filter(|&p| (point_segment_distance(p, a, b) - hw).abs() <= tol)
        .collect();
    let lo = on.iter().copied().min_by(|p, q| (*p - a).dot(u).total_cmp(&(*q - a).dot(u)))?;
    let hi = on.iter().copied().max_by(|p, q| (*p - a).dot(u).total_cmp(&(*q - a).dot(u)))?;
    (lo.dist(hi) > tol).then_some((lo, hi))
}

/// Layered drawing: reduced faces, strips, hole outlines and offset crease
/// lines (valley dashed, mountain dash-dot).
pub fn layout_svg(cp: &CreasePattern, tp: &ThickenedPattern, widths: &CreaseWidths, assignment: &[Option<Assignment>]) -> String {
    let (lo, hi) = cp.bbox();
    let margin = 0.05 * lo.dist(hi).max(1e-9);
    let w = hi.x - lo.x + 2.0 * margin;
    let h = hi.y - lo.y + 2.0 * margin;
    let px = |p: Point2| ((p.x - lo.x + margin) * SVG_UNIT, (hi.y + margin - p.y) * SVG_UNIT);
    let path = |poly: &Polygon2| {
        let mut d = String::new();
        for (i, &v) in poly.vertices.iter().enumerate() {
            let (x, y) = px(v);
            let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(x), num(y));
        }
        d.push('Z');
        d
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w * SVG_UNIT),
        num(h * SVG_UNIT),
        num(w * SVG_UNIT),
        num(h * SVG_UNIT)
    );
    let _ = writeln!(s, r##"<g id="reduced-faces" fill="#6fa8dc" stroke="#1c4587" stroke-width="0.5">"##);
    for f in 0..cp.face_count() {
        if let Some(p) = tp.face(f).filter(|p| p.len() >= 3) {
            let _ = writeln!(s, r#"<path id="face_{f}" d="{}"/>"#, path(p));
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g id="strips" fill="#b7b7b7" stroke="none">"##);
    for e in cp.creases() {
        let d: Vec<String> = (0..2).filter_map(|side| tp.strip(e, side)).filter(|p| p.len() >= 3).map(path).collect();
        if !d.is_empty() {
            let _ = writeln!(s, r#"<path id="crease_{e}" d="{}"/>"#, d.join(" "));
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g id="holes" fill="none" stroke="#000000" stroke-width="0.5">"##);
    for hole in tp.holes().filter(|h| h.polygon.len() >= 3) {
        let _ = writeln!(s, r#"<path id="{}" d="{}"/>"#, hole.key, path(&hole.polygon));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g id="offset-creases" stroke="#000000" stroke-width="1" fill="none">"##);
    for e in cp.creases() {
        let dash = match assignment.get(e).copied().flatten() {
            Some(Assignment::Mountain) => "8 3 2 3",
            _ => "6 4",
        };
        let hw = tp.scale * 0.5 * widths.get(e);
        for side in 0..2 {
            let Some((a, b)) = tp.strip(e, side).and_then(|p| offset_segment(cp, p, e, hw)) else { continue };
            let ((x1, y1), (x2, y2)) = (px(a), px(b));
            let _ = writeln!(
                s,
                r#"<line id="crease_{e}_side_{side}" x1="{}" y1="{}" x2="{}" y2="{}" stroke-dasharray="{dash}"/>"#,
                num(x1),
                num(y1),
                num(x2),
                num(y2)
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

struct ObjWriter {
    out: String,
    next: usize,
}

impl ObjWriter {
    fn new() -> Self {
        ObjWriter {
            out: String::new(),
            next: 1,
        }
    }

    fn object(&mut self, name: &str) {
        let _ = writeln!(self.out, "o {name}");
    }

    fn vertices(&mut self, pts: &[Point3]) -> usize {
        let first = self.next;
        for p in pts {
            let _ = writeln!(self.out, "v {} {} {}", num(p.x), num(p.y), num(p.z));
        }
        self.next += pts.len();
        first
    }

    fn face(&mut self, idx: impl IntoIterator<Item = usize>) {
        let list: Vec<String> = idx.into_iter().map(|i| i.to_string()).collect();
        let _ = writeln!(self.out, "f {}", list.join(" "));
    }

    fn polygon(&mut self, p: &Polygon3) {
        let first = self.vertices(&p.vertices);
        self.face(first..first + p.vertices.len());
    }
}

/// One object per folded region.
pub fn folded_obj(fs: &FoldedState3D) -> String {
    let mut w = ObjWriter::new();
    for r in &fs.regions {
        w.object(&r.key.to_string());
        w.polygon(&r.polygon);
    }
    w.out
}

/// Every solid as closed, outward-facing prisms; holes are left out.
pub fn solid_obj(sm: &SolidModel) -> String {
    let mut w = ObjWriter::new();
    for solid in sm.solids.iter().filter(|s| !s.pieces.is_empty()) {
        w.object(&solid.key.to_string());
        for prism in solid.pieces.iter().filter(|p| !p.is_empty()) {
            let n = prism.base.vertices.len();
            let mut pts = prism.bottom();
            pts.extend(prism.top());
            let b = w.vertices(&pts);
            let t = b + n;
            w.face((0..n).rev().map(|i| b + i));
            w.face((0..n).map(|i| t + i));
            for i in 0..n {
                let j = (i + 1) % n;
                w.face([b + i, b + j, t + j, t + i]);
            }
        }
    }
    w.out
}
