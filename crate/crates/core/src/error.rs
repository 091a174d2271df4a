use thiserror::Error;

/// Errors raised across the crate. Each variant has a stable numeric code
/// (see [`Error::code`]) shared by the CLI reports and the C interface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("clopen set or word is not {0}-unbordered")]
    NotUnbordered(usize),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("track index {track} out of range 1..={arity}")]
    BadTrack { track: usize, arity: usize },
    #[error("cellular automaton is not reversible")]
    NotReversible,
    #[error("no inverse found within radius {0}")]
    RadiusBoundExceeded(usize),
    #[error("biradius {found} exceeds bound {bound}")]
    BiradiusExceeded { found: usize, bound: usize },
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("permutation is not even")]
    NotEven,
    #[error("element is not in the hypocenter")]
    NotInHypocenter,
    #[error("hypergraph is not weakly connected")]
    NotWeaklyConnected,
    #[error("alphabet too small: {0}")]
    AlphabetTooSmall(String),
    #[error("parity condition violated for |B|={b}, |C|={c}")]
    ParityViolation { b: usize, c: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("orbit of 1 is not free under {0}")]
    NonFreeOrbit(String),
    #[error("unresolved name `{0}`")]
    UnresolvedName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent construction: {0}")]
    Inconsistent(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable error code; `0` is reserved for success.
    pub fn code(&self) -> i32 {
        match self {
            Error::DegenerateInput(_) => 10,
            Error::NotUnbordered(_) => 11,
            Error::AlphabetMismatch(_) => 12,
            Error::SizeMismatch { .. } => 13,
            Error::LengthMismatch { .. } => 14,
            Error::BadTrack { .. } => 15,
            Error::NotReversible => 20,
            Error::RadiusBoundExceeded(_) => 21,
            Error::BiradiusExceeded { .. } => 22,
            Error::BudgetExceeded { .. } => 23,
            Error::NotEven => 30,
            Error::NotInHypocenter => 31,
            Error::NotWeaklyConnected => 32,
            Error::AlphabetTooSmall(_) => 33,
            Error::ParityViolation { .. } => 34,
            Error::NotInvertible => 40,
            Error::NonFreeOrbit(_) => 41,
            Error::UnresolvedName(_) => 50,
            Error::Parse(_) => 51,
            Error::Inconsistent(_) => 60,
            Error::Io(_) => 70,
            Error::Invalid(_) => 71,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::NotUnbordered(_) => "NotUnbordered",
            Error::AlphabetMismatch(_) => "AlphabetMismatch",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::BadTrack { .. } => "BadTrack",
            Error::NotReversible => "ReversibilityError",
            Error::RadiusBoundExceeded(_) => "RadiusBoundExceeded",
            Error::BiradiusExceeded { .. } => "BiradiusExceeded",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotEven => "NotEven",
            Error::NotInHypocenter => "NotInHypocenter",
            Error::NotWeaklyConnected => "NotWeaklyConnected",
            Error::AlphabetTooSmall(_) => "AlphabetTooSmall",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::NotInvertible => "NotInvertible",
            Error::NonFreeOrbit(_) => "NonFreeOrbit",
            Error::UnresolvedName(_) => "UnresolvedName",
            Error::Parse(_) => "Parse",
            Error::Inconsistent(_) => "Inconsistent",
            Error::Io(_) => "Io",
            Error::Invalid(_) => "Invalid",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
