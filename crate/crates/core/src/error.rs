use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("argument `{0}` is used in an attack or dependency but never declared")]
    UndeclaredArgument(String),

    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),

    #[error("extension member `{0}` is not an argument of the framework")]
    MemberNotInAf(String),

    #[error("invalid framework: {0}")]
    InvalidFramework(String),

    #[error("invalid dependency: {0}")]
    InvalidDependency(String),

    #[error("{actual} uncertain elements exceed the configured bound of {bound}")]
    UncertaintyBoundExceeded { actual: usize, bound: usize },

    #[error("target completion `{0}` is not a completion of the framework")]
    TargetNotSubset(String),

    #[error("target excludes the only completion of a framework without uncertain arguments")]
    TargetNotExpressible,

    #[error("invalid theory: {0}")]
    InvalidTheory(String),

    #[error("argument generation exceeded {limit} ({detail})")]
    GenerationLimitExceeded { limit: &'static str, detail: String },

    #[error("argument `{0}` cannot be built in this theory")]
    ArgumentNotOfTheory(String),

    #[error("preference mentions `{0}`, which is not an argument of the theory")]
    PreferenceRefersToUnknownArgument(String),

    #[error("document declares both rule and premise uncertainty")]
    MixedUncertainty,

    #[error("witness domain or codomain does not match: {0}")]
    DomainMismatch(String),

    #[error("witness is not a bijection: {0}")]
    InvalidWitness(String),

    #[error("{actual} arguments exceed the search bound of {bound}")]
    SearchBoundExceeded { actual: usize, bound: usize },

    #[error("unsupported translation direction {from} -> {to}")]
    UnsupportedDirection { from: String, to: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE_ERROR",
            Error::UndeclaredArgument(_) => "UNDECLARED_ARGUMENT",
            Error::InvalidIdentifier(_) => "INVALID_IDENTIFIER",
            Error::MemberNotInAf(_) => "MEMBER_NOT_IN_AF",
            Error::InvalidFramework(_) => "INVALID_FRAMEWORK",
            Error::InvalidDependency(_) => "INVALID_DEPENDENCY",
            Error::UncertaintyBoundExceeded { .. } => "UNCERTAINTY_BOUND_EXCEEDED",
            Error::TargetNotSubset(_) => "TARGET_NOT_SUBSET",
            Error::TargetNotExpressible => "TARGET_NOT_EXPRESSIBLE",
            Error::InvalidTheory(_) => "INVALID_THEORY",
            Error::GenerationLimitExceeded { .. } => "GENERATION_LIMIT_EXCEEDED",
            Error::ArgumentNotOfTheory(_) => "ARGUMENT_NOT_OF_THEORY",
            Error::PreferenceRefersToUnknownArgument(_) => {
                "PREFERENCE_REFERS_TO_UNKNOWN_ARGUMENT"
            }
            Error::MixedUncertainty => "MIXED_UNCERTAINTY",
            Error::DomainMismatch(_) => "DOMAIN_MISMATCH",
            Error::InvalidWitness(_) => "INVALID_WITNESS",
            Error::SearchBoundExceeded { .. } => "SEARCH_BOUND_EXCEEDED",
            Error::UnsupportedDirection { .. } => "UNSUPPORTED_DIRECTION",
            Error::UnknownFixture(_) => "UNKNOWN_FIXTURE",
        }
    }

    /// True for errors caused by hitting a configured resource bound.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::UncertaintyBoundExceeded { .. }
                | Error::GenerationLimitExceeded { .. }
                | Error::SearchBoundExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
