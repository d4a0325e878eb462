use thiserror::Error;

use crate::lattice::Weight;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed root datum: {0}")]
    Malformed(String),
    #[error("pairing matrix is not a Cartan matrix of finite type: {0}")]
    NotFiniteType(String),
    #[error("sigma does not preserve the pinning: {0}")]
    PinningViolated(String),
    #[error("sigma has no finite order up to {0}")]
    NotFiniteOrder(usize),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not antidominant")]
    NotAntidominant(Weight),
    #[error("weight {0} is not fixed by sigma")]
    NotSigmaFixed(Weight),
    #[error("pairing of shift with {0} is not an integer")]
    NotIntegral(Weight),
    #[error("orbit exceeds the cap of {0} elements")]
    OrbitTooLarge(usize),
    #[error("Weyl group exceeds the cap of {0} elements")]
    WeylGroupTooLarge(usize),
    #[error("W0-orbit of {0} differs between the two orbit methods")]
    MethodMismatch(Weight),

    #[error("coefficient modes differ: {0} vs {1}")]
    ModeMismatch(String, String),
    #[error("element is not in the span of the m-basis (residual at {0})")]
    NotInSpan(Weight),
    #[error("pair ({0}, {1}) leaves the V_T cone")]
    ConstraintViolated(Weight, Weight),
    #[error("cannot specialize {0} at q = {1} to an integer")]
    NonIntegralSpecialization(String, i64),

    #[error("operation requires sigma = id")]
    SigmaNontrivial,
    #[error("coordinate at {0} is not a polynomial in q")]
    NonPolynomial(Weight),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("weight-V algebras need q = p prime, got {0}")]
    NotPrime(u64),
    #[error("operation is defined only for the shift rho_ad, got {0}")]
    UnsupportedShift(String),
    #[error("scaling identity fails at {0}")]
    Mismatch(Weight),

    #[error("precision exhausted while computing elementary divisors")]
    PrecisionExhausted,
    #[error("matrix is singular")]
    Singular,
    #[error("outside the supported envelope: {0}")]
    EnvelopeExceeded(String),
    #[error("nonzero count at {0} outside the dominance cone")]
    SupportViolation(Weight),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "Malformed",
            Error::NotFiniteType(_) => "NotFiniteType",
            Error::PinningViolated(_) => "PinningViolated",
            Error::NotFiniteOrder(_) => "NotFiniteOrder",
            Error::UnknownName(_) => "UnknownName",
            Error::NotDominant(_) => "NotDominant",
            Error::NotAntidominant(_) => "NotAntidominant",
            Error::NotSigmaFixed(_) => "NotSigmaFixed",
            Error::NotIntegral(_) => "NotIntegral",
            Error::OrbitTooLarge(_) => "OrbitTooLarge",
            Error::WeylGroupTooLarge(_) => "WeylGroupTooLarge",
            Error::MethodMismatch(_) => "MethodMismatch",
            Error::ModeMismatch(..) => "ModeMismatch",
            Error::NotInSpan(_) => "NotInSpan",
            Error::ConstraintViolated(..) => "ConstraintViolated",
            Error::NonIntegralSpecialization(..) => "NonIntegralSpecialization",
            Error::SigmaNontrivial => "SigmaNontrivial",
            Error::NonPolynomial(_) => "NonPolynomial",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::NotPrime(_) => "NotPrime",
            Error::UnsupportedShift(_) => "UnsupportedShift",
            Error::Mismatch(_) => "Mismatch",
            Error::PrecisionExhausted => "PrecisionExhausted",
            Error::Singular => "Singular",
            Error::EnvelopeExceeded(_) => "EnvelopeExceeded",
            Error::SupportViolation(_) => "SupportViolation",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
