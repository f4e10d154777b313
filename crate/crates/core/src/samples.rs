//! Small generated patterns: strips, single-vertex fans and the standard
//! hand-built examples.

use crate::document::WeightStrategy;
use crate::geometry::Point2;
use crate::pattern::{CreasePattern, Edge, EdgeKind, PatternDocument};

fn boundary(a: usize, b: usize) -> Edge {
    Edge {
        v: [a, b],
        kind: EdgeKind::Boundary,
    }
}

fn crease(a: usize, b: usize) -> Edge {
    Edge {
        v: [a, b],
        kind: EdgeKind::Crease,
    }
}

fn document(vertices: Vec<Point2>, edges: Vec<Edge>, faces: Vec<Vec<usize>>, layer_order: Vec<usize>) -> PatternDocument {
    let pattern = CreasePattern::new(vertices, edges, faces).expect("sample pattern is well formed");
    PatternDocument {
        pattern,
        layer_order,
        weights: WeightStrategy::Auto,
    }
}

/// Strip `[xs[0], xs.last()] × [0, 1]` with vertical creases at the inner
/// `xs`; face `i` spans `[xs[i], xs[i+1]]`.
pub fn strip(xs: &[f64], layer_order: &[usize]) -> PatternDocument {
    let n = xs.len();
    assert!(n >= 2);
    // bottom vertices 0..n, top vertices n..2n (top i above bottom i)
    let mut vertices: Vec<Point2> = xs.iter().map(|&x| Point2::new(x, 0.0)).collect();
    vertices.extend(xs.iter().map(|&x| Point2::new(x, 1.0)));
    let mut edges = Vec::new();
    for i in 0..n - 1 {
        edges.push(boundary(i, i + 1));
        edges.push(boundary(n + i, n + i + 1));
    }
    edges.push(boundary(0, n));
    edges.push(boundary(n - 1, 2 * n - 1));
    for i in 1..n - 1 {
        edges.push(crease(i, n + i));
    }
    let faces = (0..n - 1).map(|i| vec![i, i + 1, n + i + 1, n + i]).collect();
    document(vertices, edges, faces, layer_order.to_vec())
}

/// Unit-width accordion of `n` faces stacked in sequence.
pub fn accordion(n: usize) -> PatternDocument {
    let xs: Vec<f64> = (0..=n).map(|i| i as f64).collect();
    let order: Vec<usize> = (0..n).collect();
    strip(&xs, &order)
}

/// Unit square creased once at `x = 0.5`, faces `[A, B]` bottom to top.
pub fn half() -> PatternDocument {
    strip(&[0.0, 0.5, 1.0], &[0, 1])
}

/// `[0, 2]²` creased from the center to the four edge midpoints. Faces are
/// lower-left, lower-right, upper-right, upper-left.
pub fn four_vertex() -> PatternDocument {
    let vertices = [
        (0., 0.),
        (1., 0.),
        (2., 0.),
        (2., 1.),
        (2., 2.),
        (1., 2.),
        (0., 2.),
        (0., 1.),
        (1., 1.),
    ]
    .map(|(x, y)| Point2::new(x, y))
    .to_vec();
    let mut edges: Vec<Edge> = (0..8).map(|i| boundary(i, (i + 1) % 8)).collect();
    edges.extend([crease(1, 8), crease(3, 8), crease(5, 8), crease(7, 8)]);
    let faces = vec![vec![0, 1, 8, 7], vec![1, 2, 3, 8], vec![8, 3, 4, 5], vec![7, 8, 5, 6]];
    document(vertices, edges, faces, vec![0, 1, 2, 3])
}

/// `[0, 3] × [0, 1]` with creases at `x = 1, 2`.
pub fn wrap(layer_order: &[usize]) -> PatternDocument {
    strip(&[0.0, 1.0, 2.0, 3.0], layer_order)
}

/// `[0, 5] × [0, 1]` with creases at `x = 2, 3`.
pub fn strip3(layer_order: &[usize]) -> PatternDocument {
    strip(&[0.0, 2.0, 3.0, 5.0], layer_order)
}

/// Fan of triangles around an interior vertex at the origin with the given
/// consecutive sector angles in degrees (each below 180).
pub fn single_vertex(degrees: &[f64], layer_order: &[usize]) -> PatternDocument {
    let k = degrees.len();
    let mut vertices = vec![Point2::ZERO];
    let mut a: f64 = 0.0;
    for d in degrees {
        vertices.push(Point2::from_angle(a.to_radians()));
        a += d;
    }
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for i in 0..k {
        let (p, q) = (1 + i, 1 + (i + 1) % k);
        edges.push(crease(0, p));
        edges.push(boundary(p, q));
        faces.push(vec![0, p, q]);
    }
    document(vertices, edges, faces, layer_order.to_vec())
}

/// Single non-convex L-shaped face.
pub fn l_shape() -> PatternDocument {
    let vertices = [(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]
        .map(|(x, y)| Point2::new(x, y))
        .to_vec();
    let edges = (0..6).map(|i| boundary(i, (i + 1) % 6)).collect();
    document(vertices, edges, vec![(0..6).collect()], vec![0])
}
