//! Planar polygons in space and convex prisms, with the contact tests used
//! by the folded-state and solid checks.

use std::ops::{Add, Mul, Neg, Sub};

use crate::geometry::{convex_overlap_area, Point2, Polygon2, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub type Vector3 = Point3;

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_plan(p: Point2, z: f64) -> Self {
        Point3::new(p.x, p.y, z)
    }

    pub fn plan(self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Point3 {
        self * (1.0 / self.norm())
    }

    pub fn dist(self, o: Point3) -> f64 {
        (self - o).norm()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, k: f64) -> Point3 {
        Point3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

/// Planar convex polygon in space.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon3 {
    pub vertices: Vec<Point3>,
}

impl Polygon3 {
    pub fn new(vertices: Vec<Point3>) -> Self {
        Polygon3 { vertices }
    }

    /// Newell normal, unnormalized (length = twice the area).
    pub fn area_normal(&self) -> Vector3 {
        let n = self.vertices.len();
        let mut acc = Point3::default();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            acc = acc + a.cross(b);
        }
        acc
    }

    pub fn area(&self) -> f64 {
        0.5 * self.area_normal().norm()
    }

    pub fn unit_normal(&self) -> Option<Vector3> {
        let n = self.area_normal();
        let l = n.norm();
        (l > 1e-300).then(|| n * (1.0 / l))
    }

    /// In-plane orthonormal basis `(origin, u, v, n)`.
    fn frame(&self) -> Option<(Point3, Vector3, Vector3, Vector3)> {
        let n = self.unit_normal()?;
        let o = self.vertices[0];
        let far = self
            .vertices
            .iter()
            .copied()
            .max_by(|a, b| a.dist(o).total_cmp(&b.dist(o)))?;
        let u = (far - o).normalized();
        let v = n.cross(u);
        Some((o, u, v, n))
    }

    fn project(&self, frame: &(Point3, Vector3, Vector3, Vector3)) -> Polygon2 {
        let (o, u, v, _) = *frame;
        Polygon2::new(
            self.vertices
                .iter()
                .map(|&p| Point2::new((p - o).dot(u), (p - o).dot(v)))
                .collect(),
        )
    }

    pub fn bbox(&self) -> (Point3, Point3) {
        let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            lo = Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
            hi = Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        }
        (lo, hi)
    }

    /// Largest distance of a vertex from the best-fit plane.
    pub fn planarity_error(&self) -> f64 {
        match self.unit_normal() {
            None => 0.0,
            Some(n) => {
                let o = self.vertices[0];
                self.vertices
                    .iter()
                    .map(|&p| (p - o).dot(n).abs())
                    .fold(0.0, f64::max)
            }
        }
    }
}

fn boxes_apart(a: &(Point3, Point3), b: &(Point3, Point3), eps: f64) -> bool {
    a.0.x > b.1.x + eps
        || b.0.x > a.1.x + eps
        || a.0.y > b.1.y + eps
        || b.0.y > a.1.y + eps
        || a.0.z > b.1.z + eps
        || b.0.z > a.1.z + eps
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contact {
    Separate,
    Touching,
    /// Positive-measure interpenetration; carries the overlap area
    /// (coplanar) or the length of the shared interior chord (transversal).
    Penetrating(f64),
}

/// Chord of convex `p` cut by the plane `(n, o)`, as an interval along `dir`.
/// `None` unless `p` has vertices strictly on both sides.
fn chord(p: &Polygon3, n: Vector3, o: Point3, dir: Vector3, eps: f64) -> Option<(f64, f64)> {
    let d: Vec<f64> = p.vertices.iter().map(|&v| (v - o).dot(n)).collect();
    let above = d.iter().any(|&x| x > eps);
    let below = d.iter().any(|&x| x < -eps);
    if !(above && below) {
        return None;
    }
    let m = p.vertices.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..m {
        let (a, b) = (p.vertices[i], p.vertices[(i + 1) % m]);
        let (da, db) = (d[i], d[(i + 1) % m]);
        let mut push = |q: Point3| {
            let t = q.dot(dir);
            lo = lo.min(t);
            hi = hi.max(t);
        };
        if da.abs() <= eps {
            push(a);
        }
        if (da > eps && db < -eps) || (da < -eps && db > eps) {
            let t = da / (da - db);
            push(a + (b - a) * t);
        }
    }
    (hi >= lo).then_some((lo, hi))
}

/// Contact classification for two planar convex polygons in space.
/// Coplanar polygons penetrate when their overlap area exceeds `eps_abs`;
/// transversal ones when both properly cross the other's plane and their
/// chords share more than `eps_abs` of length.
pub fn polygon_contact(p: &Polygon3, q: &Polygon3, tol: &Tolerance) -> Contact {
    let eps = tol.eps_abs;
    if p.vertices.len() < 3 || q.vertices.len() < 3 {
        return Contact::Separate;
    }
    if boxes_apart(&p.bbox(), &q.bbox(), eps) {
        return Contact::Separate;
    }
    let (Some(np), Some(nq)) = (p.unit_normal(), q.unit_normal()) else {
        return Contact::Separate;
    };
    let op = p.vertices[0];
    let oq = q.vertices[0];
    let axis = np.cross(nq);
    if axis.norm() < 1e-9 {
        // parallel planes
        if (oq - op).dot(np).abs() > eps {
            return Contact::Separate;
        }
        let frame = p.frame().expect("nondegenerate");
        let a = p.project(&frame).to_ccw();
        let b = q.project(&frame).to_ccw();
        let area = convex_overlap_area(&a, &b, tol);
        return if area > eps {
            Contact::Penetrating(area)
        } else {
            Contact::Touching
        };
    }
    let dir = axis.normalized();
    match (chord(p, nq, oq, dir, eps), chord(q, np, op, dir, eps)) {
        (Some((a0, a1)), Some((b0, b1))) => {
            let len = a1.min(b1) - a0.max(b0);
            if len > eps {
                Contact::Penetrating(len)
            } else if len > -eps {
                Contact::Touching
            } else {
                Contact::Separate
            }
        }
        _ => Contact::Touching,
    }
}

/// Convex polygon swept along its unit normal over `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Prism {
    pub base: Polygon3,
    pub normal: Vector3,
    pub lo: f64,
    pub hi: f64,
}

impl Prism {
    /// `base` must be planar and convex; its winding is normalized to be
    /// counterclockwise about `normal`.
    pub fn new(base: Polygon3, normal: Vector3, lo: f64, hi: f64) -> Self {
        let normal = normal.normalized();
        let base = match base.unit_normal() {
            Some(n) if n.dot(normal) < 0.0 => {
                let mut v = base.vertices;
                v.reverse();
                Polygon3::new(v)
            }
            _ => base,
        };
        Prism {
            base,
            normal,
            lo,
            hi,
        }
    }

    pub fn volume(&self) -> f64 {
        self.base.area() * (self.hi - self.lo).max(0.0)
    }

    pub fn bottom(&self) -> Vec<Point3> {
        self.base.vertices.iter().map(|&p| p + self.normal * self.lo).collect()
    }

    pub fn top(&self) -> Vec<Point3> {
        self.base.vertices.iter().map(|&p| p + self.normal * self.hi).collect()
    }

    pub fn corners(&self) -> Vec<Point3> {
        let mut v = self.bottom();
        v.extend(self.top());
        v
    }

    fn edge_dirs(&self) -> Vec<Vector3> {
        let m = self.base.vertices.len();
        let mut out: Vec<Vector3> = (0..m)
            .map(|i| self.base.vertices[(i + 1) % m] - self.base.vertices[i])
            .filter(|d| d.norm() > 1e-300)
            .map(|d| d.normalized())
            .collect();
        out.push(self.normal);
        out
    }

    fn face_normals(&self) -> Vec<Vector3> {
        let mut out = vec![self.normal];
        for d in self.edge_dirs().iter().take(self.base.vertices.len()) {
            let s = d.cross(self.normal);
            if s.norm() > 1e-12 {
                out.push(s.normalized());
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.base.vertices.len() < 3 || self.hi - self.lo <= 0.0 || self.base.area() <= 0.0
    }
}

fn project(pts: &[Point3], axis: Vector3) -> (f64, f64) {
    pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let t = p.dot(axis);
        (lo.min(t), hi.max(t))
    })
}

/// Separating-axis clearance between two convex prisms: positive is a gap
/// (lower bound on the distance), negative is the smallest penetration depth.
pub fn prism_clearance(a: &Prism, b: &Prism) -> f64 {
    let ca = a.corners();
    let cb = b.corners();
    let mut axes = a.face_normals();
    axes.extend(b.face_normals());
    for ea in a.edge_dirs() {
        for eb in b.edge_dirs() {
            let c = ea.cross(eb);
            if c.norm() > 1e-9 {
                axes.push(c.normalized());
            }
        }
    }
    axes.into_iter()
        .map(|ax| {
            let (a0, a1) = project(&ca, ax);
            let (b0, b1) = project(&cb, ax);
            (b0 - a1).max(a0 - b1)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect_xy(x0: f64, y0: f64, x1: f64, y1: f64, z: f64) -> Polygon3 {
        Polygon3::new(vec![
            Point3::new(x0, y0, z),
            Point3::new(x1, y0, z),
            Point3::new(x1, y1, z),
            Point3::new(x0, y1, z),
        ])
    }

    fn wall_x(x: f64, y0: f64, y1: f64, z0: f64, z1: f64) -> Polygon3 {
        Polygon3::new(vec![
            Point3::new(x, y0, z0),
            Point3::new(x, y1, z0),
            Point3::new(x, y1, z1),
            Point3::new(x, y0, z1),
        ])
    }

    #[test]
    fn contact_cases() {
        let t = Tolerance::default();
        let face = rect_xy(0., 0., 1., 1., 0.5);
        // wall crossing the face interior
        assert!(matches!(
            polygon_contact(&face, &wall_x(0.5, 0., 1., 0., 1.), &t),
            Contact::Penetrating(l) if (l - 1.0).abs() < 1e-12
        ));
        // wall at the face edge
        assert_eq!(polygon_contact(&face, &wall_x(1.0, 0., 1., 0., 1.), &t), Contact::Touching);
        // wall standing on the face
        assert_eq!(polygon_contact(&face, &wall_x(0.5, 0., 1., 0.5, 1.), &t), Contact::Touching);
        // wall beside the face
        assert_eq!(polygon_contact(&face, &wall_x(2.0, 0., 1., 0., 1.), &t), Contact::Separate);
        // coplanar overlap
        assert!(matches!(
            polygon_contact(&face, &rect_xy(0.5, 0., 1.5, 1., 0.5), &t),
            Contact::Penetrating(_)
        ));
        assert_eq!(
            polygon_contact(&face, &rect_xy(1., 0., 2., 1., 0.5), &t),
            Contact::Touching
        );
    }

    #[test]
    fn prism_clearance_boxes() {
        let up = Point3::new(0., 0., 1.);
        let a = Prism::new(rect_xy(0., 0., 1., 1., 0.), up, -0.25, 0.25);
        let b = Prism::new(rect_xy(0., 0., 1., 1., 0.5), up, -0.25, 0.25);
        assert!(prism_clearance(&a, &b).abs() < 1e-12);
        let c = Prism::new(rect_xy(0., 0., 1., 1., 0.6), up, -0.25, 0.25);
        assert!((prism_clearance(&a, &c) - 0.1).abs() < 1e-12);
        let d = Prism::new(rect_xy(0.5, 0., 1.5, 1., 0.4), up, -0.25, 0.25);
        assert!((prism_clearance(&a, &d) + 0.1).abs() < 1e-12);
        assert!((a.volume() - 0.5).abs() < 1e-12);
    }
}
