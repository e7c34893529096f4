use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("matrix is not invertible")]
    Singular,

    #[error("not a group: {reason} at ({a}, {b}, {c})")]
    NotAGroup {
        reason: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },

    #[error("unknown object {0}")]
    UnknownObject(String),

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("not a natural transformation: {0}")]
    NotANaturalTransformation(String),

    #[error("maps do not share a target")]
    TargetMismatch,

    #[error("maps are not composable: {0}")]
    NonComposable(String),

    #[error("not a representation: {0}")]
    NotARepresentation(String),

    #[error("groupoid mismatch: {0}")]
    GroupoidMismatch(String),

    #[error("not natural at object {object}, element {element}")]
    NotNatural { object: String, element: usize },

    #[error("scalar {value} is not invertible in the field (component {component})")]
    NonInvertibleScalar { component: String, value: u64 },

    #[error("weights not invertible on fiber components {}", .0.join(", "))]
    NonInvertibleDelta(Vec<String>),

    #[error("malformed square: {0}")]
    MalformedSquare(String),

    #[error("spans are not composable: {0}")]
    NonComposableSpans(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("bad argument: {0}")]
    BadArgument(String),
}

impl Error {
    /// Stable machine-readable code for reports and CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotPrime(_) => "NotPrime",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::Singular => "Singular",
            Error::NotAGroup { .. } => "NotAGroup",
            Error::UnknownObject(_) => "UnknownObject",
            Error::InvalidGroupoid(_) => "InvalidGroupoid",
            Error::NotAFunctor(_) => "NotAFunctor",
            Error::NotANaturalTransformation(_) => "NotANaturalTransformation",
            Error::TargetMismatch => "TargetMismatch",
            Error::NonComposable(_) => "NonComposable",
            Error::NotARepresentation(_) => "NotARepresentation",
            Error::GroupoidMismatch(_) => "GroupoidMismatch",
            Error::NotNatural { .. } => "NotNatural",
            Error::NonInvertibleScalar { .. } => "NonInvertibleScalar",
            Error::NonInvertibleDelta(_) => "NonInvertibleDelta",
            Error::MalformedSquare(_) => "MalformedSquare",
            Error::NonComposableSpans(_) => "NonComposableSpans",
            Error::Parse(_) => "Parse",
            Error::BadArgument(_) => "BadArgument",
        }
    }
}
