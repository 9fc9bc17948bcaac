use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}: zero input is not allowed")]
    ZeroInput(&'static str),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact polynomial division (nonzero remainder)")]
    InexactDivision,
    #[error("polynomial degree {found} is too small (need at least {needed})")]
    DegreeTooSmall { needed: usize, found: usize },
    #[error("both gcd arguments are zero")]
    GcdOfZeros,
    #[error("prime {0} is unsuitable for this polynomial")]
    UnsuitablePrime(u64),
    #[error("not a monic irreducible cubic: {0}")]
    NotIrreducibleCubic(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("singular curve (zero discriminant)")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("not a CM curve: j = {0} matches none of the thirteen rational CM j-invariants")]
    NotCm(String),
    #[error("invalid CM invariants: {0}")]
    InvalidInvariants(String),
    #[error("no squarefree twist makes this element a square")]
    NoSquarefreeTwist,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
