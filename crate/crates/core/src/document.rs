//! JSON input schema, with FOLD field names accepted as an alias.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::pattern::{CreasePattern, Edge, EdgeKind, PatternDocument};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub faces: [usize; 2],
    pub w: f64,
}

/// How per-edge layer weights are chosen.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum WeightStrategy {
    /// Heights equal layer-order indices.
    #[default]
    Auto,
    Explicit(Vec<WeightEntry>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawWeights {
    Mode(String),
    Explicit(Vec<WeightEntry>),
}

#[derive(Deserialize)]
struct RawInput {
    vertices: Option<Vec<[f64; 2]>>,
    edges: Option<Vec<Edge>>,
    faces: Option<Vec<Vec<usize>>>,
    layer_order: Option<Vec<usize>>,
    weights: Option<RawWeights>,
    vertices_coords: Option<Vec<Vec<f64>>>,
    edges_vertices: Option<Vec<[usize; 2]>>,
    edges_assignment: Option<Vec<String>>,
    faces_vertices: Option<Vec<Vec<usize>>>,
}

fn missing(field: &str) -> Error {
    Error::Document(format!("missing field `{field}`"))
}

impl WeightStrategy {
    /// Reads `"auto"` or a list of `{"faces": [a, b], "w": w}` entries.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawWeights = serde_json::from_str(text)?;
        weights_from_raw(Some(raw))
    }
}

fn weights_from_raw(raw: Option<RawWeights>) -> Result<WeightStrategy> {
    match raw {
        None => Ok(WeightStrategy::Auto),
        Some(RawWeights::Mode(m)) if m == "auto" => Ok(WeightStrategy::Auto),
        Some(RawWeights::Mode(m)) => Err(Error::Document(format!("unknown weights mode `{m}`"))),
        Some(RawWeights::Explicit(list)) => Ok(WeightStrategy::Explicit(list)),
    }
}

fn fold_edges(raw: &mut RawInput) -> Result<Vec<Edge>> {
    let ev = raw.edges_vertices.take().ok_or_else(|| missing("edges_vertices"))?;
    let ea = raw.edges_assignment.take().ok_or_else(|| missing("edges_assignment"))?;
    if ea.len() != ev.len() {
        return Err(Error::Document(format!(
            "{} edges_assignment entries for {} edges",
            ea.len(),
            ev.len()
        )));
    }
    ev.into_iter()
        .zip(ea)
        .enumerate()
        .map(|(i, (v, a))| {
            let kind = match a.as_str() {
                "B" | "b" => EdgeKind::Boundary,
                "M" | "m" | "V" | "v" | "U" | "u" => EdgeKind::Crease,
                other => {
                    return Err(Error::Document(format!(
                        "edge {i}: unsupported assignment `{other}`"
                    )))
                }
            };
            Ok(Edge { v, kind })
        })
        .collect()
}

pub(crate) fn parse_input(text: &str) -> Result<PatternDocument> {
    let mut raw: RawInput = serde_json::from_str(text)?;
    let vertices: Vec<Point2> = match (raw.vertices.take(), raw.vertices_coords.take()) {
        (Some(v), _) => v.into_iter().map(|[x, y]| Point2::new(x, y)).collect(),
        (None, Some(v)) => v
            .into_iter()
            .enumerate()
            .map(|(i, c)| match c.as_slice() {
                [x, y] | [x, y, _] => Ok(Point2::new(*x, *y)),
                _ => Err(Error::Document(format!("vertex {i} needs 2 coordinates"))),
            })
            .collect::<Result<_>>()?,
        (None, None) => return Err(missing("vertices")),
    };
    let edges = match raw.edges.take() {
        Some(e) => e,
        None => fold_edges(&mut raw)?,
    };
    let faces = raw
        .faces
        .take()
        .or(raw.faces_vertices.take())
        .ok_or_else(|| missing("faces"))?;
    let layer_order = raw.layer_order.take().ok_or_else(|| missing("layer_order"))?;
    let weights = weights_from_raw(raw.weights.take())?;

    let pattern = CreasePattern::new(vertices, edges, faces)?;
    check_layer_order(&layer_order, pattern.face_count())?;
    Ok(PatternDocument {
        pattern,
        layer_order,
        weights,
    })
}

/// The order must list every face exactly once.
pub fn check_layer_order(order: &[usize], faces: usize) -> Result<()> {
    if order.len() != faces {
        return Err(Error::LayerOrder(format!(
            "{} entries for {faces} faces",
            order.len()
        )));
    }
    let mut seen = vec![false; faces];
    for &f in order {
        if f >= faces {
            return Err(Error::IndexOutOfRange {
                what: "face",
                index: f,
                len: faces,
            });
        }
        if std::mem::replace(&mut seen[f], true) {
            return Err(Error::LayerOrder(format!("face {f} listed twice")));
        }
    }
    Ok(())
}
