//! Flat folded state: the piecewise isometry onto the folded plane, the
//! layer ordering graph and its transitive reduction, the self-intersection
//! and non-wrapping conditions, mountain/valley labels and crease widths.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::document::{WeightEntry, WeightStrategy};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{region_intersect, segment_interior_length, segment_touches_interior, Intersection, Point2, Polygon2, Tolerance, Vector2};
use crate::pattern::{CreasePattern, EdgeKind};
use crate::report::{Subject, ValidationReport};

/// Planar isometry `x ↦ M x + t`, `M` row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    pub m: [f64; 4],
    pub t: Vector2,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        m: [1.0, 0.0, 0.0, 1.0],
        t: Point2::ZERO,
    };

    /// Reflection across the line through `a` and `b`.
    pub fn reflection(a: Point2, b: Point2) -> Isometry {
        let d = (b - a).normalized();
        let m = [
            2.0 * d.x * d.x - 1.0,
            2.0 * d.x * d.y,
            2.0 * d.x * d.y,
            2.0 * d.y * d.y - 1.0,
        ];
        let r = Isometry { m, t: Point2::ZERO };
        Isometry {
            m,
            t: a - r.apply_vec(a),
        }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        self.apply_vec(p) + self.t
    }

    pub fn apply_vec(&self, v: Vector2) -> Vector2 {
        Point2::new(self.m[0] * v.x + self.m[1] * v.y, self.m[2] * v.x + self.m[3] * v.y)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        Isometry {
            m: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
            t: self.apply(other.t),
        }
    }

    pub fn det(&self) -> f64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn is_reflection(&self) -> bool {
        self.det() < 0.0
    }

    fn close_to(&self, o: &Isometry, scale: f64, tol: &Tolerance) -> bool {
        let lin = self.m.iter().zip(&o.m).all(|(x, y)| (x - y).abs() <= tol.eps_rel.max(1e-12));
        lin && self.t.dist(o.t) <= tol.eps_abs + tol.eps_rel * scale
    }
}

/// Per-face isometry of the flat folding.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatMap {
    pub seed: usize,
    pub maps: Vec<Isometry>,
}

impl FlatMap {
    /// True when the face is mirrored by the folding.
    pub fn parity(&self, face: usize) -> bool {
        self.maps[face].is_reflection()
    }

    pub fn map(&self, face: usize, p: Point2) -> Point2 {
        self.maps[face].apply(p)
    }

    /// Folded image of a face, counterclockwise.
    pub fn image(&self, cp: &CreasePattern, face: usize) -> Polygon2 {
        let f = &self.maps[face];
        Polygon2::new(cp.face_polygon(face).vertices.iter().map(|&p| f.apply(p)).collect()).to_ccw()
    }

    /// Folded image of an edge, taken through its first incident face.
    pub fn edge_image(&self, cp: &CreasePattern, e: usize) -> (Point2, Point2) {
        let f = cp.edge_faces(e)[0];
        let (a, b) = cp.segment(e);
        (self.map(f, a), self.map(f, b))
    }
}

/// Builds the flat folding from face 0.
pub fn compute_flat_map(cp: &CreasePattern, tol: &Tolerance) -> Result<FlatMap> {
    compute_flat_map_from(cp, 0, tol)
}

/// Breadth-first propagation of reflections from `seed`, checking that
/// every cycle of faces closes up.
pub fn compute_flat_map_from(cp: &CreasePattern, seed: usize, tol: &Tolerance) -> Result<FlatMap> {
    let n = cp.face_count();
    if seed >= n {
        return Err(Error::IndexOutOfRange {
            what: "face",
            index: seed,
            len: n,
        });
    }
    let (lo, hi) = cp.bbox();
    let scale = lo.dist(hi).max(1.0);
    let mut maps: Vec<Option<Isometry>> = vec![None; n];
    maps[seed] = Some(Isometry::IDENTITY);
    let mut queue = VecDeque::from([seed]);
    while let Some(f) = queue.pop_front() {
        let mf = maps[f].unwrap();
        for (e, g) in cp.neighbors(f) {
            let (a, b) = cp.segment(e);
            let cand = mf.compose(&Isometry::reflection(a, b));
            match maps[g] {
                None => {
                    maps[g] = Some(cand);
                    queue.push_back(g);
                }
                Some(mg) if !mg.close_to(&cand, scale, tol) => {
                    return Err(Error::InconsistentFlatMap { face: g });
                }
                Some(_) => {}
            }
        }
    }
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(f, m)| m.ok_or_else(|| Error::Document(format!("face {f} is not connected to face {seed} by creases"))))
        .collect::<Result<_>>()?;
    Ok(FlatMap { seed, maps })
}

/// Layer ordering graph `Λ`, its reduction `Γ`, heights and `Γ` weights.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerGraph {
    pub order: Vec<usize>,
    /// `Λ`: `(lower, upper)` pairs of overlapping faces, sorted.
    pub full: Vec<(usize, usize)>,
    /// `Γ`, sorted; empty until [`transitive_reduction`] runs.
    pub reduced: Vec<(usize, usize)>,
    pub heights: Vec<f64>,
    /// Weight of each `reduced` edge.
    pub weights: Vec<f64>,
}

impl LayerGraph {
    pub fn face_count(&self) -> usize {
        self.heights.len()
    }

    /// True if `a` and `b` overlap in the folding.
    pub fn overlapping(&self, a: usize, b: usize) -> bool {
        let k = (a.min(b), a.max(b));
        self.full.iter().any(|&(x, y)| (x.min(y), x.max(y)) == k)
    }

    fn strictly_between(&self, c: usize, a: usize, b: usize) -> bool {
        let (lo, hi) = {
            let (x, y) = (self.heights[a], self.heights[b]);
            (x.min(y), x.max(y))
        };
        lo < self.heights[c] && self.heights[c] < hi
    }
}

/// `Λ` from positive-area image overlaps, directed by the layer order.
pub fn build_layer_graph(cp: &CreasePattern, fm: &FlatMap, order: &[usize], tol: &Tolerance, exec: Exec) -> Result<LayerGraph> {
    let n = cp.face_count();
    crate::document::check_layer_order(order, n)?;
    let mut rank = vec![0; n];
    for (i, &f) in order.iter().enumerate() {
        rank[f] = i;
    }
    let images: Vec<Polygon2> = (0..n).map(|f| fm.image(cp, f)).collect();
    let overlaps = exec.filter_pairs(n, |i, j| match region_intersect(&images[i], &images[j], tol) {
        Ok(Intersection::Overlapping(_)) => Some(Ok((i, j))),
        Ok(_) => None,
        Err(e) => Some(Err(e)),
    });
    let mut full = Vec::with_capacity(overlaps.len());
    for r in overlaps {
        let (i, j) = r?;
        full.push(if rank[i] < rank[j] { (i, j) } else { (j, i) });
    }
    full.sort_unstable();
    Ok(LayerGraph {
        order: order.to_vec(),
        full,
        reduced: Vec::new(),
        heights: rank.iter().map(|&r| r as f64).collect(),
        weights: Vec::new(),
    })
}

/// Transitive reduction of a DAG on nodes `0..n`. Rejects cycles.
pub fn reduce_dag(n: usize, edges: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let mut succ = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in edges {
        succ[a].push(b);
        indeg[b] += 1;
    }
    let mut topo = Vec::with_capacity(n);
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop_front() {
        topo.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push_back(w);
            }
        }
    }
    if topo.len() < n {
        let face = (0..n).find(|&v| indeg[v] > 0).unwrap();
        return Err(Error::CyclicLayerGraph { face });
    }
    let mut pos = vec![0; n];
    for (i, &v) in topo.iter().enumerate() {
        pos[v] = i;
    }
    let mut reach = vec![FixedBitSet::with_capacity(n); n];
    let mut kept = Vec::new();
    for &u in topo.iter().rev() {
        let mut s = succ[u].clone();
        s.sort_unstable_by_key(|&v| pos[v]);
        s.dedup();
        let mut covered = FixedBitSet::with_capacity(n);
        for &v in &s {
            if !covered.contains(v) {
                kept.push((u, v));
                covered.insert(v);
                covered.union_with(&reach[v]);
            }
        }
        reach[u] = covered;
    }
    kept.sort_unstable();
    Ok(kept)
}

/// Fills `Γ` and its weights from the current heights.
pub fn transitive_reduction(g: &LayerGraph) -> Result<LayerGraph> {
    let reduced = reduce_dag(g.face_count(), &g.full)?;
    let weights = reduced.iter().map(|&(a, b)| g.heights[b] - g.heights[a]).collect();
    Ok(LayerGraph {
        reduced,
        weights,
        ..g.clone()
    })
}

/// Fails when a face crossing a crease's image sits strictly between the
/// crease's two faces.
pub fn check_self_intersection(cp: &CreasePattern, fm: &FlatMap, g: &LayerGraph, tol: &Tolerance) -> ValidationReport {
    let mut r = ValidationReport::new("self_intersection");
    let images: Vec<Polygon2> = (0..cp.face_count()).map(|f| fm.image(cp, f)).collect();
    for e in cp.creases() {
        let (a, b) = cp.crease_faces(e).unwrap();
        let (p, q) = fm.edge_image(cp, e);
        for (c, img) in images.iter().enumerate() {
            if c == a || c == b || !g.strictly_between(c, a, b) {
                continue;
            }
            let len = segment_interior_length(p, q, img, tol);
            if len > tol.eps_abs {
                r.fail(
                    Subject::EdgeFace(e, c),
                    format!("face {c} crosses the crease over length {len:.6} between faces {a} and {b}"),
                );
            }
        }
    }
    r
}

/// Fails when an edge image touches the inside of a crease image while
/// all of that edge's faces sit strictly between the crease's faces.
pub fn check_non_wrapping(cp: &CreasePattern, fm: &FlatMap, g: &LayerGraph, tol: &Tolerance) -> ValidationReport {
    let mut r = ValidationReport::new("non_wrapping");
    let images: Vec<(Point2, Point2)> = (0..cp.edges().len()).map(|e| fm.edge_image(cp, e)).collect();
    for xi in cp.creases() {
        let (a, b) = cp.crease_faces(xi).unwrap();
        let (p, q) = images[xi];
        for (eta, &(c, d)) in images.iter().enumerate() {
            if eta == xi {
                continue;
            }
            let faces = cp.edge_faces(eta);
            if !faces.iter().all(|&f| f != a && f != b && g.strictly_between(f, a, b)) {
                continue;
            }
            if segment_touches_interior(p, q, c, d, tol) {
                let what = match cp.edge(eta).kind {
                    EdgeKind::Crease => "crease",
                    EdgeKind::Boundary => "boundary edge",
                };
                r.fail(
                    Subject::EdgeEdge(xi, eta),
                    format!("{what} {eta} touches the inside of the crease between faces {a} and {b}"),
                );
            }
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Assignment {
    Mountain,
    Valley,
}

/// Valley when the lower face of a crease shows its front (unmirrored) side
/// toward the upper face, with the seed face's front taken as up.
pub fn derive_crease_assignment(cp: &CreasePattern, fm: &FlatMap, g: &LayerGraph) -> Vec<Option<Assignment>> {
    (0..cp.edges().len())
        .map(|e| {
            let (a, b) = cp.crease_faces(e)?;
            let lower = if g.heights[a] < g.heights[b] { a } else { b };
            Some(if fm.parity(lower) {
                Assignment::Mountain
            } else {
                Assignment::Valley
            })
        })
        .collect()
}

/// Per-edge crease widths in layer units; zero for boundary edges.
#[derive(Clone, Debug, PartialEq)]
pub struct CreaseWidths(pub Vec<f64>);

impl CreaseWidths {
    pub fn get(&self, e: usize) -> f64 {
        self.0[e]
    }

    /// Smallest positive width.
    pub fn min_positive(&self) -> Option<(usize, f64)> {
        self.0
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, w)| w > 0.0)
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Finalizes heights and `Γ` weights, then derives crease widths.
pub fn assign_weights(cp: &CreasePattern, g: &LayerGraph, strategy: &WeightStrategy) -> Result<(LayerGraph, CreaseWidths)> {
    let mut g = g.clone();
    if g.reduced.is_empty() && !g.full.is_empty() {
        g = transitive_reduction(&g)?;
    }
    match strategy {
        WeightStrategy::Auto => {
            let n = g.face_count();
            let mut h = vec![0.0; n];
            for (i, &f) in g.order.iter().enumerate() {
                h[f] = i as f64;
            }
            g.heights = h;
        }
        WeightStrategy::Explicit(entries) => {
            g.heights = solve_heights(&g, entries)?;
        }
    }
    g.weights = g.reduced.iter().map(|&(a, b)| g.heights[b] - g.heights[a]).collect();

    let mut widths = vec![0.0; cp.edges().len()];
    for e in cp.creases() {
        let (a, b) = cp.crease_faces(e).unwrap();
        if !g.overlapping(a, b) {
            return Err(Error::IncomparableCrease(a, b, e));
        }
        widths[e] = (g.heights[a] - g.heights[b]).abs();
    }
    Ok((g, CreaseWidths(widths)))
}

fn solve_heights(g: &LayerGraph, entries: &[WeightEntry]) -> Result<Vec<f64>> {
    let n = g.face_count();
    let index: HashMap<(usize, usize), usize> = g.reduced.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut w: Vec<Option<f64>> = vec![None; g.reduced.len()];
    for entry in entries {
        let [a, b] = entry.faces;
        let i = index
            .get(&(a, b))
            .or_else(|| index.get(&(b, a)))
            .copied()
            .ok_or(Error::UnknownWeightEdge(a, b))?;
        let (x, y) = g.reduced[i];
        if !(entry.w > 0.0 && entry.w.is_finite()) {
            return Err(Error::NonPositiveWeight(x, y, entry.w));
        }
        w[i] = Some(entry.w);
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in g.reduced.iter().enumerate() {
        let wi = w[i].ok_or(Error::MissingWeight(a, b))?;
        adj[a].push((b, wi));
        adj[b].push((a, -wi));
    }
    let mut h: Vec<Option<f64>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let path_to = |parent: &[Option<usize>], mut v: usize| {
        let mut p = vec![v];
        while let Some(u) = parent[v] {
            p.push(u);
            v = u;
        }
        p.reverse();
        p
    };
    // roots in layer order so the bottom face of each component sits at 0
    for &root in &g.order {
        if h[root].is_some() {
            continue;
        }
        h[root] = Some(0.0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let hu = h[u].unwrap();
            for &(v, wv) in &adj[u] {
                let cand = hu + wv;
                match h[v] {
                    None => {
                        h[v] = Some(cand);
                        parent[v] = Some(u);
                        queue.push_back(v);
                    }
                    Some(hv) if (hv - cand).abs() > 1e-9 * (1.0 + hv.abs()) => {
                        let mut path_a = path_to(&parent, u);
                        path_a.push(v);
                        return Err(Error::InconsistentWeights {
                            path_a,
                            sum_a: cand,
                            path_b: path_to(&parent, v),
                            sum_b: hv,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let h: Vec<f64> = h.into_iter().map(|x| x.unwrap()).collect();
    let lo = g.order.iter().map(|&f| h[f]).fold(f64::INFINITY, f64::min);
    Ok(h.into_iter().map(|x| x - lo).collect())
}

/// Outcome of running every flat-state stage on a document.
#[derive(Clone, Debug)]
pub struct FlatState {
    pub flat_map: FlatMap,
    pub graph: LayerGraph,
    pub widths: CreaseWidths,
    pub assignment: Vec<Option<Assignment>>,
}
