use thiserror::Error;

/// Errors raised by the geometry, enumeration and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate line: the two points coincide")]
    DegenerateLine,
    #[error("degenerate pencil: two of the lines coincide")]
    DegeneratePencil,
    #[error("zero-dimensional point set")]
    ZeroDimensional,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("input is not a hexagon")]
    NotHexagon,
    #[error("not a hexagon with the required labeling")]
    NotDesarguianLabeling,
    #[error("absorbed lift point")]
    AbsorbedLiftPoint,
    #[error("point lies outside the affine hull")]
    OutsideAffineHull,
    #[error("repeated parameters")]
    RepeatedParameters,
    #[error("no dependencies: a Gale transform needs at least d+2 points")]
    NoDependencies,
    #[error("vector configuration is not polytopal")]
    NotPolytopal,
    #[error("dimension {0} outside the supported enumeration range 2..=8")]
    EnumerationRange(usize),
    #[error("lift not found")]
    LiftNotFound,
    #[error("not a prism-subset structure: {0}")]
    NotPrismStructure(String),
    #[error("support too large for exact cover ({0} cells, limit 200)")]
    SupportTooLarge(usize),
    #[error("bound parameters out of range: {0}")]
    BoundDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
