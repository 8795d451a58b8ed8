use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has no nonzero term below its truncation order")]
    ZeroSeries,
    #[error("polynomial is not W(D4)-invariant")]
    NotInvariant,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("t-exponent {0} is not a multiple of 12")]
    UnsupportedLattice(i64),
    #[error("injected expansion has a pole of order q^{0}/24")]
    HasPole(i64),
    #[error("coefficient at t^{needed} is beyond the truncation order t^{trunc}")]
    InsufficientPrecision { needed: i64, trunc: i64 },
    #[error("no representation over M*[K,L,M,N] exists")]
    NoRepresentation,
    #[error("representation over M*[K,L,M,N] is not unique ({0}-dimensional kernel)")]
    AmbiguousRepresentation(usize),
    #[error("transvectant index {index} exceeds form orders ({n1}, {n2})")]
    BadOrder { index: i32, n1: i32, n2: i32 },
    #[error("semiinvariant has negative order {0}")]
    NegativeOrder(i32),
    #[error("result is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("cannot parse expression: {0}")]
    Parse(String),
    #[error("grading mismatch: ({0}, {1}) vs ({2}, {3})")]
    GradingMismatch(i32, i32, i32, i32),
}

pub type Result<T> = std::result::Result<T, Error>;
