use thiserror::Error;

/// Every failure the library reports. Exact arithmetic never rounds, so each
/// variant names a concrete algebraic obstruction rather than a tolerance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("residues are taken modulo different polynomials")]
    ModulusMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("polynomial does not split into linear factors over the base field")]
    NotSplit,
    #[error("polynomial has a repeated root")]
    RepeatedRoot,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: String, y: String },
    #[error("x = u: the chart of beta_0 does not cover this divisor, use the node path")]
    EqualAbscissae,
    #[error("the six roots of F are required but unavailable over the base field")]
    RootsUnavailable,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("point is a singular point of the Kummer surface (gradient vanishes)")]
    SingularPoint,
    #[error("point does not lie on the Kummer surface")]
    NotOnKummer,
    #[error("degenerate divisor: {0}")]
    DegenerateDivisor(&'static str),
    #[error("index {0} out of range 1..=6")]
    IndexOutOfRange(usize),
    #[error("indices must be pairwise distinct")]
    RepeatedIndex,
    #[error("f_6 = {0} is not 1; rescale Y to make the sextic monic")]
    NotMonic(String),
    #[error("root theta_{0} = 0; translate the curve first")]
    ZeroRoot(usize),
    #[error("point is one of the 16 singular points (tropes) of the dual surface")]
    SingularTrope,
    #[error("the two points coincide projectively")]
    CoincidentPoints,
    #[error("restricted conic has rank {0} <= 1: the point is a node")]
    RankDeficient(usize),
    #[error("twist class vanishes at theta_{0}")]
    VanishingAtRoot(usize),
    #[error("beta^2 is not congruent to xi modulo F")]
    WitnessMismatch,
    #[error("search space of {0} candidates exceeds the exhaustive limit")]
    SearchSpaceTooLarge(u128),
    #[error("invalid Moebius candidate: {0}")]
    InvalidCandidate(String),
    #[error("degenerate root configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("point does not lie on the surface")]
    NotOnSurface,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
