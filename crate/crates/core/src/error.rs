use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateLength { expected: usize, got: usize },
    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error("matrix shape {got:?} does not match expected {expected:?}")]
    MatrixShape {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree {requested} exceeds the supported maximum {max}")]
    DegreeOverflow { requested: usize, max: usize },
    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("no cup product data for {0}")]
    MissingCupData(String),
    #[error("b-class is not in the image of the bundle pullback")]
    BNotLiftable,
    #[error("internal exactness failure: {0}")]
    Exactness(String),
    #[error("automorphism is not invertible over the integers")]
    NotInvertible,
    #[error("unsupported action: {0}")]
    UnsupportedAction(String),
    #[error("missing action data in degree {0}")]
    MissingAction(usize),
    #[error("self-test mismatch: {0}")]
    SelfTest(String),
}

pub type Result<T> = std::result::Result<T, Error>;
