use thiserror::Error;

/// Errors raised by the exact-arithmetic layer and the model checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field contexts ({0} vs {1})")]
    ContextMismatch(String, String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval does not isolate exactly one root")]
    NotIsolating,
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("square root of negative value {0}")]
    NegativeArgument(String),
    #[error("polynomial has even degree {0}")]
    EvenDegree(usize),
    #[error("root index {index} out of range ({count} real roots)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("square root of {0} does not exist in the {1} context")]
    SqrtUnavailableInContext(String, String),
    #[error("{0} is not an element of the {1} context")]
    NotInContext(String, String),
    #[error("wrong number of operands: {0}")]
    Arity(String),
    #[error("parameter {0} out of range")]
    ParameterOutOfRange(String),
    #[error("invalid Poincaré map: {0}")]
    InvalidMap(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("body {0} is not an inertial observer")]
    NotInertial(String),
    #[error("point {0} outside the domain")]
    OutOfDomain(String),
    #[error("tangent at t = {0} is not timelike")]
    NotTimelike(String),
    #[error("acceleration must be positive, got {0}")]
    NonpositiveAcceleration(String),
    #[error("curve is not well-parametrized: {0}")]
    NotWellParametrized(String),
    #[error("curves do not match at t = {0}")]
    Mismatch(String),
    #[error("syntax error at position {position}: expected {}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid model description: {0}")]
    InvalidModel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
