use thiserror::Error;

use crate::scalar::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar kind mismatch: {left} vs {right}")]
    KindMismatch { left: Kind, right: Kind },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("sign of zero")]
    ZeroSign,
    #[error("syntax error at column {}: {msg}", pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("symbol `{symbol}` at column {} is not allowed for kind {kind}", pos + 1)]
    WrongSymbol { pos: usize, symbol: String, kind: Kind },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad group: {0}")]
    BadGroup(String),
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("bad homomorphism: {0}")]
    BadHom(String),
    #[error("not a bicharacter: {0}")]
    NotBicharacter(String),
    #[error("not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("form is not regular: {0}")]
    NotRegular(String),
    #[error("wrong form type: {0}")]
    WrongType(String),
    #[error("group too large: {0}")]
    TooLarge(String),
    #[error("singular matrix (no pivot in column {column})")]
    Singular { column: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown building block `{0}`")]
    UnknownBlock(String),
    #[error("unsupported kind pair ({0},{1})")]
    UnsupportedKindPair(Kind, Kind),
    #[error("not a grading: {0}")]
    NotGrading(String),
    #[error("not a division grading: {0}")]
    NotDivision(String),
    #[error("cannot classify: {0}")]
    Unclassifiable(String),
    #[error("complex-linear grading (case 2f), classification deferred: {0}")]
    Deferred(String),
    #[error("ambient groups differ: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("invalid invariants: {0}")]
    InvalidPayload(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Short stable identifier used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::KindMismatch { .. } => "kind-mismatch",
            Error::ZeroInverse => "zero-inverse",
            Error::ZeroSign => "zero-sign",
            Error::Syntax { .. } | Error::WrongSymbol { .. } | Error::Parse { .. } => "parse",
            Error::BadGroup(_) | Error::NotInGroup(_) | Error::BadHom(_) => "group",
            Error::NotBicharacter(_)
            | Error::NotQuadratic(_)
            | Error::NotRegular(_)
            | Error::WrongType(_) => "form",
            Error::TooLarge(_) => "too-large",
            Error::Singular { .. } => "singular",
            Error::Shape(_) => "shape",
            Error::UnknownBlock(_) => "unknown-block",
            Error::UnsupportedKindPair(..) => "unsupported-kind-pair",
            Error::NotGrading(_) => "not-grading",
            Error::NotDivision(_) => "not-division",
            Error::Unclassifiable(_) => "unclassifiable",
            Error::Deferred(_) => "deferred",
            Error::AmbientMismatch(..) => "ambient-mismatch",
            Error::InvalidPayload(_) => "invalid-payload",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
        }
    }
}
