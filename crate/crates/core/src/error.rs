use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is outside the ground set of size {size}")]
    InvalidSubset { element: usize, size: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("operation requires a nonempty ground set")]
    EmptyGroundSet,

    #[error("operation requires a nonempty subset")]
    EmptySubset,

    #[error("delete and contract sets overlap")]
    OverlappingSets,

    #[error("matroid is not 2-connected; decompose into components first")]
    NotTwoConnected,

    #[error("element {0} is a loop")]
    LoopElement(usize),

    #[error("element {0} is a coloop")]
    ColoopElement(usize),

    #[error("2-sum basepoint is degenerate: {0}")]
    DegenerateBasepoint(String),

    #[error("set {0} is not both a circuit and a hyperplane")]
    NotCircuitHyperplane(String),

    #[error("unknown catalog name {0:?}")]
    UnknownName(String),

    #[error("invalid basis family: {0}")]
    InvalidBases(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("constraint system is unbounded")]
    Unbounded,

    #[error("constraint is violated by a point of the polytope: {0}")]
    InvalidConstraint(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
