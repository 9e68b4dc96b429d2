use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("Gröbner basis computation exceeded the degree cap {cap} (pair of degree {degree})")]
    DegreeCap { cap: u32, degree: u32 },

    #[error("colon by the zero element")]
    ZeroElement,

    #[error("quotient is not Artinian (Krull dimension {0})")]
    NotArtinian(usize),

    #[error("quotient is Artinian but not supported at the origin only")]
    NotOriginSupported,

    #[error("quotient does not have finite length at the origin")]
    NotLocallyArtinian,

    #[error("containment violated: {0}")]
    NotContained(String),

    #[error("subquotient does not have finite length")]
    InfiniteLength,

    #[error("saturation did not stabilize within {0} steps")]
    SaturationLimit(usize),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("inconsistent module presentation: {0}")]
    InconsistentComponents(String),

    #[error("not a system of parameters: {0}")]
    NotSystemOfParameters(String),

    #[error("system of parameters is not good: condition fails at filtration index {index}")]
    NotGood { index: usize },

    #[error("parameter element {0} is not homogeneous")]
    NotHomogeneous(usize),

    #[error("filtration violates the dimension condition: {0}")]
    DimensionCondition(String),

    #[error("good system of parameters search exhausted ({0})")]
    SearchExhausted(String),

    #[error("multiplicity did not stabilize within a window budget of {budget}")]
    NoStabilization { budget: u32 },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
