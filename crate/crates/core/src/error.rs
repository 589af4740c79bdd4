use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid letter {0}: words are over the alphabet {{1, 2}}")]
    InvalidLetter(u8),

    #[error("{value} is out of range for words of length {alpha} (must be < 2^{alpha})")]
    OutOfRange { value: u64, alpha: usize },

    #[error("index arithmetic overflows u64 (word length {0})")]
    IndexOverflow(usize),

    #[error("operation is undefined on the zero element")]
    Diamond,

    #[error("element {0} has a symmetric core")]
    HasSymmetricCore(String),

    #[error("element is not in the ideal J")]
    NotInIdeal,

    #[error("element is zero")]
    ZeroElement,

    #[error("element lies in the ideal J: no factorization of the identity exists")]
    InIdeal,

    #[error("internal error: {0}")]
    Internal(String),

    #[error("functional index set contains the empty word")]
    EmptyWordInIndexSet,

    #[error("functional is not T*-fixed up to length {length}: differs at {at}")]
    NotTStarFixed { length: usize, at: String },

    #[error("fixed-point check length {given} is below the required {required}")]
    CheckLengthTooShort { given: usize, required: usize },

    #[error("exponent p = {0} is not in [1, inf)")]
    InvalidExponent(f64),

    #[error("invalid vector index {0}: indices start at 1")]
    InvalidIndex(u64),

    #[error("certificate does not reproduce the element")]
    CertificateMismatch,

    #[error("witness does not verify: g # f # h != delta_e")]
    WitnessMismatch,

    #[error("malformed word {0:?}")]
    MalformedWord(String),

    #[error("malformed rational {0:?}")]
    MalformedRational(String),
}

impl Error {
    /// Stable name used in machine-readable error payloads.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidLetter(_) => "InvalidLetter",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::IndexOverflow(_) => "IndexOverflow",
            Error::Diamond => "Diamond",
            Error::HasSymmetricCore(_) => "HasSymmetricCore",
            Error::NotInIdeal => "NotInIdeal",
            Error::ZeroElement => "ZeroElement",
            Error::InIdeal => "InIdeal",
            Error::Internal(_) => "InternalError",
            Error::EmptyWordInIndexSet => "EmptyWordInIndexSet",
            Error::NotTStarFixed { .. } => "NotTStarFixed",
            Error::CheckLengthTooShort { .. } => "CheckLengthTooShort",
            Error::InvalidExponent(_) => "InvalidExponent",
            Error::InvalidIndex(_) => "InvalidIndex",
            Error::CertificateMismatch => "CertificateMismatch",
            Error::WitnessMismatch => "WitnessMismatch",
            Error::MalformedWord(_) => "MalformedWord",
            Error::MalformedRational(_) => "MalformedRational",
        }
    }
}
