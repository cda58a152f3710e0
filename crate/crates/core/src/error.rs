use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed quiver: {0}")]
    InvalidQuiver(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("automorphism incompatible with incidence at edge {edge}")]
    IncompatibleWithIncidence { edge: String },
    #[error("edge permutation is ambiguous (parallel edges between {0} and {1})")]
    AmbiguousEdgeMap(String, String),
    #[error("automorphism is not admissible: vertices {0} and {1} share an orbit and are adjacent")]
    NotAdmissible(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("dimension vector is not constant on the orbit of vertex {0}")]
    NotOrbitConstant(String),
    #[error("sigma constraint violated at vertex {0}")]
    SigmaConstraintViolated(String),
    #[error("no isomorphism s(s(Q)) -> Q found")]
    IsoNotFound,
    #[error("quiver has a self-loop at {0}")]
    SelfLoop(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("folded row depends on the orbit representative at orbit {0}")]
    RepresentativeDependence(usize),
    #[error("family {0} has no defining representation here")]
    UnsupportedFamily(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("highest weight is not invariant under the diagram automorphism")]
    NotInvariantWeight,
    #[error("branching produced a negative multiplicity at weight {0:?}")]
    StrippingFailure(Vec<i64>),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("module dimension {dim} exceeds the configured cap {cap}")]
    TooLarge { dim: u128, cap: u128 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("preprojective relation fails at vertex {0}")]
    RelationViolation(String),
    #[error("module is not stable")]
    NotStable,
    #[error("matrix is not invertible at vertex {0}")]
    NotInvertible(String),
    #[error("matrix does not satisfy g^{0} = 1")]
    NotFiniteOrder(usize),
    #[error("map is not a framed embedding: {0}")]
    NotAnEmbedding(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
