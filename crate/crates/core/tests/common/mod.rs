#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use thickfold::exec::Exec;
use thickfold::flat_state::{
    assign_weights, build_layer_graph, compute_flat_map, derive_crease_assignment, transitive_reduction, FlatState,
};
use thickfold::geometry::Tolerance;
use thickfold::pattern::{parse_pattern, PatternDocument};
use thickfold::thickener::{
    construct, fold_state, layout_pattern, scale_upper_bound, Construction, FoldedState3D, ScaleBound, ThickenedPattern,
};
use thickfold::Result;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> PatternDocument {
    parse_pattern(&fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

/// Every stage below the validity gate, so invalid inputs can still be
/// inspected.
pub struct Built {
    pub doc: PatternDocument,
    pub flat: FlatState,
    pub c: Construction,
    pub bound: ScaleBound,
}

pub fn build(doc: PatternDocument) -> Result<Built> {
    let t = tol();
    let cp = &doc.pattern;
    let fm = compute_flat_map(cp, &t)?;
    let g = build_layer_graph(cp, &fm, &doc.layer_order, &t, Exec::default())?;
    let g = transitive_reduction(&g)?;
    let (g, widths) = assign_weights(cp, &g, &doc.weights)?;
    let assignment = derive_crease_assignment(cp, &fm, &g);
    let c = construct(cp, &widths, &t)?;
    let bound = scale_upper_bound(cp, &c, &t);
    Ok(Built {
        flat: FlatState {
            flat_map: fm,
            graph: g,
            widths,
            assignment,
        },
        doc,
        c,
        bound,
    })
}

impl Built {
    pub fn at(&self, s: f64) -> Result<(ThickenedPattern, FoldedState3D)> {
        let cp = &self.doc.pattern;
        let tp = layout_pattern(cp, &self.c, &self.bound, s, &tol(), Exec::default())?;
        let fs = fold_state(cp, &self.c, &tp, &self.flat.flat_map, &self.flat.graph, &tol())?;
        Ok((tp, fs))
    }
}
