use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input is well-formed but violates a required property.
    Validation,
    /// A mathematical precondition of the requested operation fails.
    Precondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("grading is not effective: the degrees do not generate the group")]
    IneffectiveGrading,
    #[error("generator {0} does not lie in the irrelevant ideal")]
    NotInIrrelevantIdeal(String),
    #[error("{0} is not a relevant generator of the irrelevant ideal")]
    NotAGenerator(String),
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("invalid system of fans: {0}")]
    InvalidSystem(String),
    #[error("ray matrix does not have full column rank")]
    RankDeficient,
    #[error("rays do not span the ambient space")]
    RaysDoNotSpan,
    #[error("cone uses a ray that is not a row of the ray matrix: {0}")]
    UnknownRay(String),
    #[error("invalid group homomorphism: {0}")]
    InvalidHom(String),
    #[error("degree of the image of variable {0} is incompatible with alpha")]
    IncompatibleDegree(usize),
    #[error("exponent map does not send the source grading kernel into the target kernel")]
    KernelNotPreserved,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("two incomparable maximal faces meet the subspace")]
    AmbiguousFace,
    #[error("enumeration box {0} is too small to certify the semigroup")]
    BoxTooSmall(u32),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::IneffectiveGrading
            | Error::InvalidGroup(_)
            | Error::InvalidDegree(_)
            | Error::NotInIrrelevantIdeal(_)
            | Error::InvalidSystem(_)
            | Error::InvalidHom(_)
            | Error::IncompatibleDegree(_)
            | Error::InvalidMap(_) => ErrorKind::Validation,
            _ => ErrorKind::Precondition,
        }
    }
}
