use num_bigint::BigUint;

/// Errors shared by every module of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be >= 1")]
    BadExtensionDegree,
    #[error("modulus is not a monic irreducible of the declared degree")]
    ReducibleModulus,
    #[error("cannot parse field spec `{0}`")]
    BadFieldSpec(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("operation is not defined over this field: {0}")]
    UnsupportedField(String),
    #[error("characteristic {0} is not supported here")]
    UnsupportedCharacteristic(u64),
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("binary forms have the wrong degrees for this resultant")]
    ResultantDegree,
    #[error("the two points coincide; they do not span a line")]
    CoincidentPoints,
    #[error("the line lies on the surface; intersection points are undefined")]
    LineOnSurface,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("degree budget too small: {0}")]
    BudgetTooSmall(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("generator parameter out of range: {0}")]
    BadParameter(String),
    #[error("{0} = {1} is not a prime power")]
    NotPrimePower(&'static str, u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field with {have} elements too small: need more than {need}, lift to extension degree {ext}")]
    FieldTooSmall { have: u64, need: u64, ext: u32 },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse<S: Into<String>>(msg: S) -> Error {
        Error::Parse(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Exact integer n-th root (floor).
pub fn biguint_nth_root(x: &BigUint, n: u32) -> BigUint {
    x.nth_root(n)
}
