use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {0} exceeds the supported size")]
    FieldTooLarge(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("modulus must be monic of degree {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: String },
    #[error("element encoding {enc} out of range for a field of order {q}")]
    ElementOutOfRange { enc: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("input element must be nonzero")]
    ZeroInput,
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("rational function has zero numerator")]
    ZeroNumerator,
    #[error("rational function has zero denominator")]
    ZeroDenominator,
    #[error("cover degree {n} does not divide q-1 = {q_minus_1}")]
    DegreeNotDividing { n: u64, q_minus_1: u64 },
    #[error("cover y^{n} = f is reducible: f is a {gcd}-th power over the algebraic closure")]
    ReducibleCover { n: u64, gcd: u64 },
    #[error("cover degree must be at least 2")]
    DegreeTooSmall,
    #[error("f is constant")]
    ConstantFunction,
    #[error("Hurwitz sum 2g-2 = {0} is not an even number >= -2")]
    InternalParityError(i128),
    #[error("prediction (genus {expected_genus}, points {expected_points}) disagrees with engine (genus {genus}, points {points})")]
    PredictionMismatch {
        expected_genus: u64,
        expected_points: u64,
        genus: u64,
        points: u64,
    },
    #[error("{points} points exceed the Hasse-Weil bound {bound}")]
    WeilBoundViolated { points: u64, bound: u64 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("basis vectors are linearly dependent over GF(p)")]
    DependentBasis,
    #[error("invalid splitting: {0}")]
    InvalidSplit(&'static str),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("f is not a polynomial in x^{0}")]
    NotAQuotient(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that indicate a bug in the engine rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalParityError(_)
                | Error::PredictionMismatch { .. }
                | Error::WeilBoundViolated { .. }
                | Error::Internal(_)
        )
    }

    /// Stable variant name, used by the CLI on standard error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::ReducibleModulus { .. } => "ReducibleModulus",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroInput => "ZeroInput",
            Error::ZeroExponent => "ZeroExponent",
            Error::BothZero => "BothZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ZeroNumerator => "ZeroNumerator",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::DegreeNotDividing { .. } => "DegreeNotDividing",
            Error::ReducibleCover { .. } => "ReducibleCover",
            Error::DegreeTooSmall => "DegreeTooSmall",
            Error::ConstantFunction => "ConstantFunction",
            Error::InternalParityError(_) => "InternalParityError",
            Error::PredictionMismatch { .. } => "PredictionMismatch",
            Error::WeilBoundViolated { .. } => "WeilBoundViolated",
            Error::Internal(_) => "Internal",
            Error::DependentBasis => "DependentBasis",
            Error::InvalidSplit(_) => "InvalidSplit",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NotAQuotient(_) => "NotAQuotient",
            Error::Parse(_) => "Parse",
        }
    }
}
