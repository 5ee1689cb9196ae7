use thiserror::Error;

/// Errors raised while parsing fans, validating toric data or manipulating series.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed fan document: {0}")]
    Malformed(String),
    #[error("non-primitive ray {index}: {coords:?}")]
    NonPrimitiveRay { index: usize, coords: Vec<i64> },
    #[error("duplicate ray: rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} references ray {index}, which is out of range")]
    ConeIndexOutOfRange { cone: usize, index: usize },
    #[error("non-unimodular cone {cone} (determinant {det})")]
    NonUnimodular { cone: usize, det: i64 },
    #[error("ray {0} lies in no maximal cone")]
    UnusedRay(usize),
    #[error("wall {wall:?} shared by {count} cone{}", if *.count == 1 { "" } else { "s" })]
    WallSharing { wall: Vec<usize>, count: usize },
    #[error("fan is not connected through its walls")]
    Disconnected,
    #[error("no strictly positive functional on wall classes (fan is not projective)")]
    NonProjective,
    #[error("basis cone {0} out of range")]
    BasisCone(usize),
    #[error("unsupported dimension {0}: face computations need n <= 3")]
    UnsupportedDimension(usize),
    #[error("not semi-Fano: wall {wall:?} has Chern number {c1}")]
    NotSemiFano { wall: Vec<usize>, c1: i64 },
    #[error("ray index {0} out of range")]
    RayIndex(usize),
    #[error("series shape mismatch: {0}")]
    Shape(String),
    #[error("exp needs a series with zero constant term")]
    ExpConstantTerm,
    #[error("log needs a series with constant term 1")]
    LogConstantTerm,
    #[error("disc class has Maslov index {0}, expected 2")]
    MaslovIndex(i64),
    #[error("class of degree {degree} lies beyond the computed order {order}")]
    OutOfOrder { degree: String, order: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
