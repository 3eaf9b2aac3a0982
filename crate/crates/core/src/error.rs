use thiserror::Error;

/// Errors raised by the arithmetic, identity and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is not invertible: constant term must be +1 or -1 at valuation 0")]
    NonUnitSeries,
    #[error("(a;q)_n with n = {0} < 0 is not a polynomial")]
    NegativeIndexNonPolynomial(i64),
    #[error("infinite product does not stabilize: step {0} must be positive")]
    DivergentProduct(String),
    #[error("theta series diverges: quadratic step {0} must be positive")]
    DivergentTheta(String),
    #[error("halving left an odd coefficient at exponent {0}")]
    OddCoefficient(String),
    #[error("result has a negative exponent {0}")]
    NegativeExponentResult(String),
    #[error("exponent {0} cannot be represented in half-integer units")]
    UnrepresentableExponent(String),
    #[error("polynomial division is not exact")]
    NonExactDivision,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("parameter binding violates schema of `{id}`: {reason}")]
    SchemaViolation { id: String, reason: String },
    #[error("pair window does not contain F at ({0}, {1})")]
    WindowTooSmall(i64, i64),
    #[error("pair invariant fails at (L, M) = ({0}, {1})")]
    InvalidPair(i64, i64),
    #[error("unknown oracle `{0}`")]
    UnknownOracle(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
