use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(#[from] serde_json::Error),

    #[error("invalid document: {0}")]
    Document(String),

    #[error("{what} index {index} out of range (have {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("duplicate edge between vertices {0} and {1}")]
    DuplicateEdge(usize, usize),

    #[error("face {face} cycle is not closed: {reason}")]
    OpenFaceCycle { face: usize, reason: String },

    #[error("edge {edge} is used by {count} face(s), expected {expected}")]
    EdgeIncidence {
        edge: usize,
        count: usize,
        expected: usize,
    },

    #[error("layer order must list every face exactly once: {0}")]
    LayerOrder(String),

    #[error("flat mapping is inconsistent around face {face}")]
    InconsistentFlatMap { face: usize },

    #[error("layer graph contains a cycle through face {face}")]
    CyclicLayerGraph { face: usize },

    #[error("faces {0} and {1} of crease {2} do not overlap in the folding")]
    IncomparableCrease(usize, usize, usize),

    #[error("weight for faces {0}->{1} is not positive ({2})")]
    NonPositiveWeight(usize, usize, f64),

    #[error("weight for faces {0}->{1} is not an edge of the reduced layer graph")]
    UnknownWeightEdge(usize, usize),

    #[error("no weight given for reduced layer graph edge {0}->{1}")]
    MissingWeight(usize, usize),

    #[error("inconsistent weights: path {path_a:?} sums to {sum_a}, path {path_b:?} sums to {sum_b}")]
    InconsistentWeights {
        path_a: Vec<usize>,
        sum_a: f64,
        path_b: Vec<usize>,
        sum_b: f64,
    },

    #[error("infeasible sector: {0}")]
    InfeasibleSector(String),

    #[error("self-intersecting polygon")]
    SelfIntersectingPolygon,

    #[error("unbounded trim at vertex {vertex}")]
    UnboundedTrim { vertex: usize },

    #[error("construction invariant violated: {0}")]
    Invariant(String),

    #[error("validation failed:\n{0}")]
    Validation(String),

    #[error("pattern has no creases to thicken")]
    NoCreases,

    #[error("requested scale {requested} is outside (0, {upper}]")]
    ScaleOutOfRange { requested: f64, upper: f64 },

    #[error("no intersection-free scale found; smallest failing scale tried was {smallest_failing}")]
    ScaleSearch { smallest_failing: f64 },

    #[error("thickness {t} exceeds maximum {t_max} set by crease {crease}")]
    ThicknessExceeded { t: f64, t_max: f64, crease: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status: 1 validation, 2 input or I/O, 3 scale or
    /// construction, 4 thickness.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Syntax(_)
            | Error::Document(_)
            | Error::IndexOutOfRange { .. }
            | Error::DuplicateEdge(..)
            | Error::OpenFaceCycle { .. }
            | Error::EdgeIncidence { .. }
            | Error::LayerOrder(_)
            | Error::Config(_)
            | Error::Io(_) => 2,
            Error::ScaleOutOfRange { .. }
            | Error::ScaleSearch { .. }
            | Error::UnboundedTrim { .. }
            | Error::SelfIntersectingPolygon
            | Error::Invariant(_) => 3,
            Error::ThicknessExceeded { .. } => 4,
            _ => 1,
        }
    }
}
