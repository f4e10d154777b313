//! Crease-pattern model, input parsing and structural checks (planarity,
//! tiling, face convexity, Kawasaki's alternating-angle condition).

use std::collections::HashMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::document::{self, WeightStrategy};
use crate::error::{Error, Result};
use crate::geometry::{ccw_angle, orient, segment_distance, Point2, Polygon2, Tolerance, Vector2};
use crate::report::{Subject, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Crease,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub v: [usize; 2],
    pub kind: EdgeKind,
}

/// One angular sector around a vertex, between two consecutive incident
/// edges in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sector {
    /// Face filling the sector, `None` for the exterior gap.
    pub face: Option<usize>,
    pub start_edge: usize,
    pub end_edge: usize,
    pub start_dir: Vector2,
    pub end_dir: Vector2,
    pub angle: f64,
}

/// Straight-line planar embedding with convex counterclockwise faces.
#[derive(Clone, Debug, PartialEq)]
pub struct CreasePattern {
    vertices: Vec<Point2>,
    edges: Vec<Edge>,
    faces: Vec<Vec<usize>>,
    face_edges: Vec<Vec<usize>>,
    /// For each edge: the face traversing it `v[0] -> v[1]`, then the one
    /// traversing it backwards (creases only).
    edge_faces: Vec<Vec<usize>>,
    edge_index: HashMap<(usize, usize), usize>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl CreasePattern {
    /// Indexes the pattern, normalizing face cycles to counterclockwise.
    pub fn new(vertices: Vec<Point2>, edges: Vec<Edge>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let nv = vertices.len();
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::Document(format!("vertex {i} has a non-finite coordinate")));
        }
        let mut edge_index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            for &v in &e.v {
                if v >= nv {
                    return Err(Error::IndexOutOfRange {
                        what: "vertex",
                        index: v,
                        len: nv,
                    });
                }
            }
            if e.v[0] == e.v[1] {
                return Err(Error::Document(format!("edge {i} is a loop")));
            }
            if edge_index.insert(key(e.v[0], e.v[1]), i).is_some() {
                return Err(Error::DuplicateEdge(e.v[0], e.v[1]));
            }
        }

        let mut cycles = Vec::with_capacity(faces.len());
        let mut face_edges = Vec::with_capacity(faces.len());
        let mut edge_faces: Vec<Vec<(usize, bool)>> = vec![Vec::new(); edges.len()];
        for (fi, cycle) in faces.into_iter().enumerate() {
            if cycle.len() < 3 {
                return Err(Error::OpenFaceCycle {
                    face: fi,
                    reason: format!("only {} vertices", cycle.len()),
                });
            }
            for &v in &cycle {
                if v >= nv {
                    return Err(Error::IndexOutOfRange {
                        what: "vertex",
                        index: v,
                        len: nv,
                    });
                }
            }
            let mut seen = cycle.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != cycle.len() {
                return Err(Error::OpenFaceCycle {
                    face: fi,
                    reason: "repeated vertex".into(),
                });
            }
            let poly = Polygon2::new(cycle.iter().map(|&v| vertices[v]).collect());
            let mut cycle = cycle;
            if poly.signed_area() < 0.0 {
                cycle.reverse();
            }
            let n = cycle.len();
            let mut fe = Vec::with_capacity(n);
            for i in 0..n {
                let (a, b) = (cycle[i], cycle[(i + 1) % n]);
                let Some(&e) = edge_index.get(&key(a, b)) else {
                    return Err(Error::OpenFaceCycle {
                        face: fi,
                        reason: format!("no edge between vertices {a} and {b}"),
                    });
                };
                edge_faces[e].push((fi, edges[e].v[0] == a));
                fe.push(e);
            }
            cycles.push(cycle);
            face_edges.push(fe);
        }

        let mut ordered = Vec::with_capacity(edges.len());
        for (e, inc) in edge_faces.into_iter().enumerate() {
            let expected = match edges[e].kind {
                EdgeKind::Crease => 2,
                EdgeKind::Boundary => 1,
            };
            if inc.len() != expected {
                return Err(Error::EdgeIncidence {
                    edge: e,
                    count: inc.len(),
                    expected,
                });
            }
            let mut inc = inc;
            inc.sort_by_key(|&(_, fwd)| !fwd);
            ordered.push(inc.into_iter().map(|(f, _)| f).collect());
        }

        Ok(CreasePattern {
            vertices,
            edges,
            faces: cycles,
            face_edges,
            edge_faces: ordered,
            edge_index,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Point2 {
        self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Edge index of side `i` of `face` (from cycle vertex `i` to `i + 1`).
    pub fn face_edges(&self, face: usize) -> &[usize] {
        &self.face_edges[face]
    }

    pub fn face_polygon(&self, face: usize) -> Polygon2 {
        Polygon2::new(self.faces[face].iter().map(|&v| self.vertices[v]).collect())
    }

    pub fn edge_faces(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&key(a, b)).copied()
    }

    pub fn creases(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e].kind == EdgeKind::Crease)
    }

    /// Incident faces of a crease: `(left of v0->v1, right of v0->v1)`.
    pub fn crease_faces(&self, e: usize) -> Option<(usize, usize)> {
        match self.edge_faces[e].as_slice() {
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn segment(&self, e: usize) -> (Point2, Point2) {
        let [a, b] = self.edges[e].v;
        (self.vertices[a], self.vertices[b])
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let (a, b) = self.segment(e);
        a.dist(b)
    }

    /// Faces adjacent to `face` across creases, as `(edge, neighbor)`.
    pub fn neighbors(&self, face: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.face_edges[face].iter().filter_map(move |&e| {
            let (a, b) = self.crease_faces(e)?;
            Some((e, if a == face { b } else { a }))
        })
    }

    /// Incident edges of `v` sorted counterclockwise by direction.
    pub fn incident_edges(&self, v: usize) -> Vec<(usize, Vector2)> {
        let p = self.vertices[v];
        let mut out: Vec<(usize, Vector2, f64)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.v.contains(&v))
            .map(|(i, e)| {
                let other = if e.v[0] == v { e.v[1] } else { e.v[0] };
                let d = (self.vertices[other] - p).normalized();
                (i, d, d.angle())
            })
            .collect();
        out.sort_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)));
        out.into_iter().map(|(i, d, _)| (i, d)).collect()
    }

    /// Sectors around `v`, counterclockwise, starting after the first
    /// incident edge by angle.
    pub fn sectors(&self, v: usize) -> Vec<Sector> {
        let inc = self.incident_edges(v);
        let k = inc.len();
        // face whose corner at v starts at edge (v, next)
        let mut start_face: HashMap<usize, usize> = HashMap::new();
        for (f, cycle) in self.faces.iter().enumerate() {
            if let Some(i) = cycle.iter().position(|&x| x == v) {
                start_face.insert(self.face_edges[f][i], f);
            }
        }
        (0..k)
            .map(|i| {
                let (e0, d0) = inc[i];
                let (e1, d1) = inc[(i + 1) % k];
                Sector {
                    face: start_face.get(&e0).copied(),
                    start_edge: e0,
                    end_edge: e1,
                    start_dir: d0,
                    end_dir: d1,
                    angle: if k == 1 { TAU } else { ccw_angle(d0, d1) },
                }
            })
            .collect()
    }

    /// Sum of face areas.
    pub fn face_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_polygon(f).area()).sum()
    }

    /// Area enclosed by the boundary cycle(s), from the boundary edges
    /// directed as their faces traverse them.
    pub fn boundary_area(&self) -> f64 {
        let mut twice = 0.0;
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.kind != EdgeKind::Boundary {
                continue;
            }
            let f = self.edge_faces[e][0];
            let cycle = &self.faces[f];
            let i = self.face_edges[f].iter().position(|&x| x == e).unwrap();
            let a = self.vertices[cycle[i]];
            let b = self.vertices[cycle[(i + 1) % cycle.len()]];
            twice += a.cross(b);
        }
        0.5 * twice
    }

    /// Smallest axis-aligned box around all vertices.
    pub fn bbox(&self) -> (Point2, Point2) {
        Polygon2::new(self.vertices.clone()).bbox()
    }
}

/// Parsed input document.
#[derive(Clone, Debug)]
pub struct PatternDocument {
    pub pattern: CreasePattern,
    /// Bottom-to-top face sequence.
    pub layer_order: Vec<usize>,
    pub weights: WeightStrategy,
}

/// Parses a pattern document (native schema or FOLD field names).
pub fn parse_pattern(text: &str) -> Result<PatternDocument> {
    document::parse_input(text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    Interior,
    Exterior,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexClass {
    pub labels: Vec<VertexLabel>,
    /// Cyclic sector angles (radians) of interior vertices; empty otherwise.
    pub angles: Vec<Vec<f64>>,
}

/// Labels vertices on a boundary edge exterior and collects the sector
/// angles of interior vertices.
pub fn classify_vertices(cp: &CreasePattern) -> VertexClass {
    let n = cp.vertices().len();
    let mut labels = vec![VertexLabel::Interior; n];
    for e in cp.edges() {
        if e.kind == EdgeKind::Boundary {
            labels[e.v[0]] = VertexLabel::Exterior;
            labels[e.v[1]] = VertexLabel::Exterior;
        }
    }
    let angles = (0..n)
        .map(|v| match labels[v] {
            VertexLabel::Interior => cp.sectors(v).iter().map(|s| s.angle).collect(),
            VertexLabel::Exterior => Vec::new(),
        })
        .collect();
    VertexClass { labels, angles }
}

/// Alternating sum `θ1 - θ2 + θ3 - …`, or `None` for an odd count.
pub fn alternating_sum(angles: &[f64]) -> Option<f64> {
    if !angles.len().is_multiple_of(2) {
        return None;
    }
    Some(
        angles
            .iter()
            .enumerate()
            .map(|(i, a)| if i % 2 == 0 { *a } else { -*a })
            .sum(),
    )
}

pub fn check_convex_faces(cp: &CreasePattern, tol: &Tolerance) -> ValidationReport {
    let mut r = ValidationReport::new("convex_faces");
    for f in 0..cp.face_count() {
        let poly = cp.face_polygon(f);
        if let Some(i) = poly.reflex_corner(tol) {
            r.fail(
                Subject::Face(f),
                format!("reflex corner at vertex {}", cp.faces()[f][i]),
            );
        }
    }
    r
}

pub fn check_kawasaki(_cp: &CreasePattern, vc: &VertexClass, tol: &Tolerance) -> ValidationReport {
    let mut r = ValidationReport::new("kawasaki");
    for (v, label) in vc.labels.iter().enumerate() {
        if *label != VertexLabel::Interior {
            continue;
        }
        let angles = &vc.angles[v];
        match alternating_sum(angles) {
            None => r.fail(Subject::Vertex(v), format!("odd degree {}", angles.len())),
            Some(s) if s.abs() > tol.angle() => r.fail(
                Subject::Vertex(v),
                format!("alternating angle sum {:.6}°", s.to_degrees()),
            ),
            Some(_) => {}
        }
    }
    r
}

/// Planar embedding, crease traversal directions and tiling of the
/// boundary region.
pub fn check_structure(cp: &CreasePattern, tol: &Tolerance) -> ValidationReport {
    let mut r = ValidationReport::new("structure");
    let edges = cp.edges();
    for i in 0..edges.len() {
        let (a, b) = cp.segment(i);
        for j in i + 1..edges.len() {
            let (c, d) = cp.segment(j);
            let shared = edges[i].v.iter().find(|v| edges[j].v.contains(v)).copied();
            match shared {
                Some(s) => {
                    let p = cp.vertex(s);
                    let oi = if edges[i].v[0] == s { b } else { a };
                    let oj = if edges[j].v[0] == s { d } else { c };
                    if orient(p, oi, oj, tol) == 0 && (oi - p).dot(oj - p) > 0.0 {
                        r.fail(Subject::EdgeEdge(i, j), "edges overlap");
                    }
                }
                None => {
                    if segment_distance(a, b, c, d) <= tol.eps_abs {
                        r.fail(Subject::EdgeEdge(i, j), "edges meet away from a shared endpoint");
                    }
                }
            }
        }
    }
    let fa = cp.face_area();
    let ba = cp.boundary_area();
    if (fa - ba).abs() > tol.eps_abs.max(tol.eps_rel * ba.abs()) {
        r.fail(
            Subject::Face(0),
            format!("faces cover area {fa} but the boundary encloses {ba}"),
        );
    }
    r
}
