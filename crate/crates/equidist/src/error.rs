use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("z * conj(z) is not rational")]
    NonRationalNorm,
    #[error("modulus {from} does not divide {to}")]
    BadModulus { from: u64, to: u64 },
    #[error("modulus {modulus} exceeds the cap {cap}")]
    ModulusCap { modulus: u64, cap: u64 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unsupported prime {0}: only odd primes are handled")]
    UnsupportedPrime(u64),
    #[error("insufficient precision: need {needed}, have {have}")]
    InsufficientPrecision { needed: u32, have: u32 },
    #[error("arguments do not match the {0} regime")]
    RegimeMismatch(&'static str),
    #[error("no omega-table entry for character exponent {0}")]
    MissingOmegaEntry(u64),
    #[error("Kirillov vector exceeded {0} terms")]
    TermGuard(usize),
    #[error("normalizing constant C0 vanished")]
    ZeroNormalizer,
    #[error("truncation unstable: {0}")]
    TruncationUnstable(String),
    #[error("window unstable: {0}")]
    WindowUnstable(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("singular matrix")]
    Singular,
    #[error("label not found: {0}")]
    NotFound(String),
    #[error("schema drift: {0}")]
    SchemaDrift(String),
    #[error("range exceeded: {0}")]
    RangeExceeded(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type ArithError = Error;
pub type Result<T> = std::result::Result<T, Error>;
