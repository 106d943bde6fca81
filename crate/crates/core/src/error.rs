use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid level r = {0}: the root-of-unity order must be at least 3")]
    InvalidLevel(u32),

    #[error("label {label} is not admissible at level r = {level} (truncation requires n <= {max})", max = .level - 2)]
    InadmissibleLabel { label: u32, level: u32 },

    #[error("the adjoint label (n = 2) requires level r >= 4, got r = {0}")]
    AdjointExcluded(u32),

    #[error("inadmissible vertex ({0}, {1}, {2}) at level r = {3}")]
    InadmissibleVertex(u32, u32, u32, u32),

    #[error("Jones-Wenzl projector P_{n} degenerates at level r = {level}")]
    ProjectorDegenerate { n: u32, level: u32 },

    #[error("network: {0}")]
    Network(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("simplex {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: u32 },

    #[error("simplex {0:?} is listed more than once")]
    DuplicateSimplex([u32; 5]),

    #[error("facet {facet:?} lies in {count} simplices (a closed manifold needs exactly 2)")]
    NonManifoldFacet { facet: [u32; 4], count: usize },

    #[error("the triangulation is empty")]
    EmptyTriangulation,

    #[error("euler characteristic metadata {declared} disagrees with computed {computed}")]
    EulerMismatch { declared: i64, computed: i64 },

    #[error("the triangulation is not orientable")]
    NonOrientable,

    #[error("signature metadata is missing")]
    MissingSignature,

    #[error("pachner move {mv}: {msg}")]
    PachnerSite { mv: &'static str, msg: String },

    #[error("contraction would need a tensor with {entries} entries (cap {cap})")]
    ResourceCap { entries: u128, cap: u128 },

    #[error("configuration size n = {n} exceeds the number of 4-simplices N = {simplices}")]
    TooManyInsertions { n: usize, simplices: usize },

    #[error("coupling must be nonzero")]
    ZeroCoupling,

    #[error("{0}")]
    InvalidArgument(String),
}
