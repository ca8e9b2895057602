use thiserror::Error;

/// Errors produced by the library.
///
/// `Internal` marks invariant violations that indicate a bug rather than bad
/// input; the CLI maps it to a distinct exit code.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    WordSyntax { position: usize, message: String },
    #[error("generator index out of range in token '{token}': B_{strands} has generators s1..s{}", strands - 1)]
    IndexOutOfRange { token: String, strands: usize },
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("unknown named word '{0}'")]
    UnknownName(String),
    #[error("named word '{name}' requires {required} strands, got {given}")]
    WrongStrands {
        name: String,
        required: usize,
        given: usize,
    },
    #[error("unsupported strand count {0}: only 3 and 4 are implemented")]
    UnsupportedStrands(usize),

    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("matrix is not invertible over the Laurent ring: determinant {0} is not a unit")]
    NonUnitDeterminant(String),

    #[error("scalar parse error: {0}")]
    ScalarParse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible fields: cannot combine Q(sqrt {0}) with Q(sqrt {1})")]
    MixedField(u64, u64),
    #[error("cannot mix exact and floating-point scalars in {0}")]
    ExactFloatMix(&'static str),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("radicand {0} exceeds the supported factoring range")]
    RadicandTooLarge(u64),

    #[error("specialization at t = 0 is undefined (det rho(s_i) = -t)")]
    ZeroSpecialization,
    #[error("determinant must be 1 for isometry classification, got {0}")]
    DeterminantNotOne(String),
    #[error("matrix is a scalar matrix; no fixed-point data")]
    ScalarMatrix,
    #[error("operation requires an elliptic element, got {0}")]
    NotElliptic(String),
    #[error("t = {t} is not in the regime required by case {case}")]
    RegimeMismatch { t: String, case: u8 },
    #[error("orbit test requires at least 2 iterations, got {0}")]
    TooFewIterations(usize),

    #[error("word is a power of s1; its 2-1 entry is identically zero")]
    SigmaOnePower,
    #[error("2-1 entry of the word is identically zero")]
    ZeroEntry,
    #[error("precondition failed: specialized image of the word is not the identity")]
    NotInKernel,
    #[error("alpha is outside the hypothesis: {0}")]
    GaloisHypothesis(String),

    #[error("I/O error: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
