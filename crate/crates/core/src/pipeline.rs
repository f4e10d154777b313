//! End-to-end driver: validation, weights, thickening, scale search and
//! the folded state.

use crate::document::WeightStrategy;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flat_state::{
    assign_weights, build_layer_graph, check_non_wrapping, check_self_intersection, compute_flat_map,
    derive_crease_assignment, transitive_reduction, FlatMap, FlatState, LayerGraph,
};
use crate::geometry::Tolerance;
use crate::pattern::{check_convex_faces, check_kawasaki, check_structure, classify_vertices, PatternDocument};
use crate::report::{Subject, ValidationReport};
use crate::thickener::{
    construct, find_global_scale, scale_upper_bound, Construction, FoldedState3D, ScaleBound, ThickenedPattern,
};

/// Reports from every input check, plus the flat folding when it exists.
#[derive(Clone, Debug)]
pub struct Validation {
    pub reports: Vec<ValidationReport>,
    pub flat_map: Option<FlatMap>,
    /// `Λ` and `Γ` with order-index heights.
    pub graph: Option<LayerGraph>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed()) && self.graph.is_some()
    }

    pub fn summary(&self) -> String {
        self.reports.iter().map(|r| r.to_string()).collect()
    }
}

fn stage_failure(check: &'static str, subject: Subject, e: &Error) -> ValidationReport {
    let mut r = ValidationReport::new(check);
    r.fail(subject, e.to_string());
    r
}

pub fn validate(doc: &PatternDocument, tol: &Tolerance, exec: Exec) -> Validation {
    let cp = &doc.pattern;
    let vc = classify_vertices(cp);
    let mut reports = vec![check_structure(cp, tol), check_convex_faces(cp, tol), check_kawasaki(cp, &vc, tol)];
    let mut out = Validation {
        reports: Vec::new(),
        flat_map: None,
        graph: None,
    };

    let fm = match compute_flat_map(cp, tol) {
        Ok(fm) => {
            reports.push(ValidationReport::new("flat_map"));
            fm
        }
        Err(e) => {
            let face = match e {
                Error::InconsistentFlatMap { face } => face,
                _ => 0,
            };
            reports.push(stage_failure("flat_map", Subject::Face(face), &e));
            out.reports = reports;
            return out;
        }
    };
    let g = match build_layer_graph(cp, &fm, &doc.layer_order, tol, exec).and_then(|g| transitive_reduction(&g)) {
        Ok(g) => {
            reports.push(ValidationReport::new("layer_graph"));
            g
        }
        Err(e) => {
            let face = match e {
                Error::CyclicLayerGraph { face } => face,
                _ => 0,
            };
            reports.push(stage_failure("layer_graph", Subject::Face(face), &e));
            out.reports = reports;
            out.flat_map = Some(fm);
            return out;
        }
    };
    reports.push(check_self_intersection(cp, &fm, &g, tol));
    reports.push(check_non_wrapping(cp, &fm, &g, tol));
    out.reports = reports;
    out.flat_map = Some(fm);
    out.graph = Some(g);
    out
}

/// How the working scale is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScaleRequest {
    /// Fraction of the upper bound, in `(0, 1]`.
    Fraction(f64),
    Absolute(f64),
}

impl Default for ScaleRequest {
    fn default() -> Self {
        ScaleRequest::Fraction(0.5)
    }
}

impl ScaleRequest {
    pub fn check(self) -> Result<Self> {
        match self {
            ScaleRequest::Fraction(f) if !(f > 0.0 && f <= 1.0) => {
                Err(Error::Config(format!("scale fraction must lie in (0, 1], got {f}")))
            }
            ScaleRequest::Absolute(s) if !(s > 0.0 && s.is_finite()) => {
                Err(Error::Config(format!("scale must be positive, got {s}")))
            }
            r => Ok(r),
        }
    }

    pub fn resolve(self, s_star: f64) -> f64 {
        match self {
            ScaleRequest::Fraction(f) => f * s_star,
            ScaleRequest::Absolute(s) => s,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ThickenOptions {
    pub scale: ScaleRequest,
    /// Replaces the document's weights when set.
    pub weights: Option<WeightStrategy>,
    pub tolerance: Tolerance,
    pub exec: Exec,
}

/// Every intermediate result of a successful run.
#[derive(Clone, Debug)]
pub struct Thickened {
    pub validation: Validation,
    pub flat: FlatState,
    pub construction: Construction,
    pub bound: ScaleBound,
    pub scale: f64,
    pub layout: ThickenedPattern,
    pub folded: FoldedState3D,
    /// Scales tried by the search, with their outcome.
    pub attempts: Vec<(f64, bool)>,
}

pub fn thicken(doc: &PatternDocument, opts: &ThickenOptions) -> Result<Thickened> {
    let tol = &opts.tolerance;
    let request = opts.scale.check()?;
    let validation = validate(doc, tol, opts.exec);
    if !validation.passed() {
        return Err(Error::Validation(validation.summary()));
    }
    let cp = &doc.pattern;
    if cp.creases().next().is_none() {
        return Err(Error::NoCreases);
    }
    let fm = validation.flat_map.clone().expect("validated");
    let g = validation.graph.clone().expect("validated");
    let strategy = opts.weights.as_ref().unwrap_or(&doc.weights);
    let (g, widths) = assign_weights(cp, &g, strategy)?;
    let assignment = derive_crease_assignment(cp, &fm, &g);

    let construction = construct(cp, &widths, tol)?;
    let bound = scale_upper_bound(cp, &construction, tol);
    let requested = request.resolve(bound.s_star);
    let search = find_global_scale(cp, &construction, &bound, &fm, &g, Some(requested), tol, opts.exec)?;

    Ok(Thickened {
        validation,
        flat: FlatState {
            flat_map: fm,
            graph: g,
            widths,
            assignment,
        },
        construction,
        bound,
        scale: search.scale,
        layout: search.thickened,
        folded: search.folded,
        attempts: search.attempts,
    })
}
