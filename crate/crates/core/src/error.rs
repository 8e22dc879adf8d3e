use thiserror::Error;

/// Errors surfaced by curve construction, section computation and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is below the minimum 2^20")]
    ModulusTooSmall(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("modulus {p} too small for degree {d}: require p > 4d")]
    CharacteristicTooSmall { p: u64, d: u16 },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
    #[error("curve degree {0} is below the minimum 3")]
    DegreeTooSmall(u16),
    #[error("form is identically zero")]
    ZeroForm,
    #[error("curve is singular{}", witness.map(|w| format!(" at ({}:{}:{})", w[0], w[1], w[2])).unwrap_or_default())]
    SingularCurve { witness: Option<[u64; 3]> },
    #[error("point ({0}:{1}:{2}) is not on the curve")]
    PointNotOnCurve(u64, u64, u64),
    #[error("point ({0}:{1}:{2}) is a singular point of the curve")]
    SingularPoint(u64, u64, u64),
    #[error("exponents {0:?} do not sum to the form degree {1}")]
    ExponentMismatch([u16; 3], u16),
    #[error("matrix entry ({0},{1}) out of bounds for {2}x{3}")]
    EntryOutOfBounds(u32, u32, usize, usize),
    #[error("divisor-twisted bundle not accepted here")]
    DivisorTwistedBundle,
    #[error("bundle has no computable h^1 route")]
    NoH1Route,
    #[error("bundle power not representable: {0}")]
    NotRepresentable(String),
    #[error("section spaces on different curves")]
    CurveMismatch,
    #[error("form is not in the span of the section basis")]
    NotInSpan,
    #[error("internal consistency check failed: {0}")]
    ConsistencyCheck(String),
    #[error("line {line}: {msg}")]
    InputParse { line: usize, msg: String },
    #[error("no bundle named `{0}` in input")]
    UnknownBundle(String),
    #[error("branch precision must be at least 1")]
    BadPrecision,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
